from benchmark.generator import *
from benchmark.metrics import *
from benchmark.runner import *
