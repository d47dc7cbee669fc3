# monte-carlo experiments
from . import harness
from . import tables

from .harness import ExperimentPlan, McReport, run_experiment, run_contamination, assemble_table
