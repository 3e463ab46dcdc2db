from affect.compute import *
from affect.engine import *
from affect.patterns import *
from affect.metaObserver import *
from affect.review import *
