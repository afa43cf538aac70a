from .suites import SUITES, DEFAULT_TRIALS, SuiteRun, Tally, run_suite
from .demos import DEMOS, density, contract, ray
