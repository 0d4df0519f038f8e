"""
Battery - the full acceptance run behind `verify-all`
"""
import logging
from dataclasses import asdict, dataclass
from typing import Any, Dict, List

from src.core.axioms import universe_suite
from src.core.interpretability import interpretability_suite
from src.core.proof_library import check_deduction_pairs
from src.core.proofs import soundness_harness
from src.core.report import SuiteReport
from src.core.statements import statements_suite
from src.core.tarski import check_truth_tables, roundtrip_report, separation_matrix

logger = logging.getLogger(__name__)


@dataclass
class BatteryConfig:
    seed: int = 0
    jobs: int = 1
    budget: int = 2_000_000
    trials: int = 1000
    model_size: int = 4
    statement_size: int = 3
    substitution_depth: int = 3
    first_order_samples: int = 500
    universe_level: int = 3
    acla_samples: int = 100
    omega_formulas: int = 50
    max_failures: int = 20
    max_hf_rank: int = 4
    hcl_level: int = 3
    hat_level: int = 2
    roundtrip_size: int = 2
    roundtrip_depth: int = 3
    roundtrip_formulas: int = 24
    separation_size: int = 3
    quick: bool = False

    @classmethod
    def quick_run(cls, seed: int = 0, jobs: int = 1, budget: int = 2_000_000) -> "BatteryConfig":
        """Narrowed bounds for smoke runs"""
        return cls(seed=seed, jobs=jobs, budget=budget, trials=100, model_size=3, statement_size=2,
                   substitution_depth=2, first_order_samples=100, universe_level=2, acla_samples=20,
                   omega_formulas=10, max_hf_rank=3, roundtrip_size=1, roundtrip_formulas=8,
                   separation_size=2, quick=True)


def _propositional_suite() -> SuiteReport:
    suite = SuiteReport("propositional", params={})
    suite.add(check_truth_tables())
    suite.add(check_deduction_pairs())
    return suite


def verify_all(cfg: BatteryConfig) -> List[SuiteReport]:
    """Run every battery in order"""
    steps = (
        ("propositional", _propositional_suite),
        ("statements", lambda: statements_suite(cfg.statement_size, cfg.first_order_samples, cfg.seed,
                                                cfg.budget, cfg.substitution_depth)),
        ("soundness", lambda: soundness_harness(cfg.trials, cfg.model_size, cfg.seed, cfg.jobs)),
        ("universe", lambda: universe_suite(cfg.universe_level, cfg.seed, cfg.acla_samples,
                                            cfg.omega_formulas, cfg.max_failures)),
        ("interpretability", lambda: interpretability_suite(cfg.max_hf_rank, cfg.hcl_level, cfg.hat_level)),
        ("tarski", lambda: roundtrip_report(cfg.roundtrip_size, cfg.roundtrip_depth, cfg.roundtrip_formulas,
                                            cfg.jobs, cfg.budget)),
    )
    suites: List[SuiteReport] = []
    for name, run in steps:
        logger.info(f"verify-all: {name}")
        suites.append(run())
    separation = SuiteReport("separation", params={"max_size": cfg.separation_size})
    separation.add(separation_matrix(cfg.separation_size, cfg.budget))
    suites.append(separation)
    for suite in suites:
        for report in suite.checks:
            del report.failures[cfg.max_failures:]
    logger.info(f"verify-all: {'pass' if all(s.passed for s in suites) else 'FAIL'}")
    return suites


def battery_document(cfg: BatteryConfig, suites: List[SuiteReport]) -> Dict[str, Any]:
    """Identical configs give identical documents"""
    passed = all(s.passed for s in suites)
    return {
        "suite": "verify-all",
        "passed": passed,
        "params": asdict(cfg),
        "checks": [s.to_dict() for s in suites],
    }