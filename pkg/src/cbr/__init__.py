from cbr.models import *
from cbr.embedding import *
from cbr.signals import *
from cbr.retriever import *
