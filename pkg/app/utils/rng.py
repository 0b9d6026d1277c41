from builtins import int
import numpy as np

from app.utils.errors import InvalidSeedError

U64_LIMIT = 1 << 64


def validate_seed(seed: int) -> int:
    if not 0 <= int(seed) < U64_LIMIT:
        raise InvalidSeedError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return int(seed)


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a u64 seed; the only RNG the solvers consume."""
    return np.random.Generator(np.random.PCG64(validate_seed(seed)))


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for trial `index` of a best-of run.

    Trial 0 is the plain `make_rng(seed)` stream, so a single trial is the
    seeded single-shot run. Later trials are keyed by `spawn_key=(index,)`,
    so the first k trials draw the same bits whether k or more are requested.
    """
    if int(index) == 0:
        return make_rng(seed)
    sequence = np.random.SeedSequence(validate_seed(seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.PCG64(sequence))
