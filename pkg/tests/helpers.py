import numpy as np

from relsteer import qstate


def random_states(n, seed=0):
    rng = np.random.default_rng(seed)
    return [qstate.random_state(rng) for _ in range(n)]
