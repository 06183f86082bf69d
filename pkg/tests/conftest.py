import os
import warnings

import pytest
from hypothesis import HealthCheck, settings

from xmod import catalog
from xmod.search import search_three_crossed

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def group_data(T):
    """Groups, boundaries and actions of a 3-crossed module, in search order."""
    return (T.M, T.L, T.H, T.G, T.d_ml, T.d_lh, T.d_hg, T.act_gh, T.act_gl, T.act_gm,
            T.act_hl, T.act_hm, T.act_lm)


@pytest.fixture(scope="session")
def zero_search():
    """Every 3-crossed module lifting over the all-trivial Z2^4 data, in stream order."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return list(search_three_crossed(*group_data(catalog.get("zero(Z2,Z2,Z2,Z2)"))))
