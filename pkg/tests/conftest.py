import math

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def unit_vectors(draw, min_size=1, max_size=8, min_abs=0.05):
    """Unit vectors whose entries are bounded away from zero."""
    k = draw(st.integers(min_size, max_size))
    mags = draw(st.lists(st.floats(min_abs, 1.0), min_size=k, max_size=k))
    signs = draw(st.lists(st.sampled_from([-1.0, 1.0]), min_size=k, max_size=k))
    v = np.array(mags) * np.array(signs)
    v = v / np.linalg.norm(v)
    return [float(e) for e in v]


INV_E = math.exp(-1.0)
