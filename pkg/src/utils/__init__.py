from utils.errors import *
from utils.validators import *
from utils.textHelper import *
from utils.timeHelper import *
from utils.jsonlHelper import *
