import pytest

from minsurfsym.hierarchy import ChainSpec, generate_symmetry


@pytest.fixture(scope="session")
def generated():
    """Session cache of generated symmetries keyed by ChainSpec."""
    cache = {}

    def get(spec: ChainSpec):
        if spec not in cache:
            cache[spec] = generate_symmetry(spec)
        return cache[spec]

    return get
