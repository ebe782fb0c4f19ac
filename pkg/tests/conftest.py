from __future__ import annotations

import pytest

from ocelmine import casegen


@pytest.fixture(scope="session")
def case_log():
    """The full case-study log; generated once per session."""
    return casegen.generate(casegen.default_case_config())


@pytest.fixture(scope="session")
def small_config():
    return casegen.GeneratorConfig(
        n_claims=120,
        horizon_days=30,
        n_human_reported=12,
        n_ai_predicted=30,
        n_inv_both=4,
        n_inv_ai_only=2,
        n_inv_human_only=1,
        n_duplicate_pcp=3,
        n_claim_handlers=5,
        n_investigators=2,
        n_customers=60,
        seed=17,
    )


@pytest.fixture(scope="session")
def small_log(small_config):
    return casegen.generate(small_config)
