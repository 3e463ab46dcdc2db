from calculus.propositions import *
from calculus.resolver import *
from calculus.floorRules import *
from calculus.conformance import *
