import numpy as np
import pytest

from listsort import kernels
from listsort.core import Key


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Compile every kernel up front so JIT cost never lands inside a timed test.
    kernels.warmup()


def keys_of(values) -> list[Key]:
    return [Key(int(v), i) for i, v in enumerate(values)]


def oracle_sorted(keys) -> list[Key]:
    # Python's sorted is the trusted stable oracle; it never touches the
    # counting channel.
    return sorted(keys, key=lambda k: k.value)


def random_values(seed: int, n: int, span: int = 10**6) -> np.ndarray:
    from listsort.datagen import splitmix_stream

    return (splitmix_stream(seed, n) % np.uint64(span)).astype(np.int64)
