import os

import pytest
from hypothesis import HealthCheck, settings

from rotorlab.diagram import diagram_from_json

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=15,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# PD-style codes, counterclockwise from the incoming under-strand
CODES = {
    "unknot": {"crossings": [], "free_loops": 1},
    "unlink2": {"crossings": [], "free_loops": 2},
    "right_trefoil": {"crossings": [[3, 1, 4, 0], [5, 3, 0, 2], [1, 5, 2, 4]]},
    "left_trefoil": {"crossings": [[0, 3, 1, 4], [2, 5, 3, 0], [4, 1, 5, 2]]},
    "hopf_pos": {"crossings": [[0, 2, 1, 3], [2, 0, 3, 1]]},
    "hopf_neg": {"crossings": [[3, 0, 2, 1], [1, 2, 0, 3]]},
    "figure_eight": {"crossings": [[3, 1, 4, 0], [7, 5, 0, 4], [5, 2, 6, 3], [1, 6, 2, 7]]},
}


@pytest.fixture
def knot():
    def get(name, **extra):
        return diagram_from_json({**CODES[name], **extra})
    return get
