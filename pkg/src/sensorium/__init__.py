from sensorium.vitals import *
from sensorium.renderer import *
