from gate.discrepancy import *
from gate.gatePipeline import *
