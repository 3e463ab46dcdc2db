from memory.store import *
from memory.facts import *
from memory.narrative import *
from memory.housekeeping import *
from memory.cycleLog import *
from memory.audit import *
