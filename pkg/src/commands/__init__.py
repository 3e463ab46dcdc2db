from commands import (
    affectReplay,
    auditSummary,
    calculusEval,
    cbrCommands,
    factsCommands,
    gateEval,
    housekeep,
    metaCommands,
    patternsReport,
    sensoriumRender,
)
from commands.common import *

# Registration order is the order shown by --help
COMMAND_MODULES = (
    calculusEval,
    gateEval,
    cbrCommands,
    factsCommands,
    auditSummary,
    affectReplay,
    sensoriumRender,
    patternsReport,
    housekeep,
    metaCommands,
)
