import io

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gentle_lab.corpus import NAMES, load
from gentle_lab.generator import GeneratorConfig, generate, random_sample

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in NAMES}


@pytest.fixture(scope="session")
def e1(corpus):
    return corpus["e1"]


@pytest.fixture(scope="session")
def samples():
    return random_sample(50, seed=0)


@pytest.fixture(scope="session")
def all_algebras(corpus, samples):
    return list(corpus.values()) + samples


def gentle_algebras(max_vertices=6, shape="any"):
    """Hypothesis strategy: seeded random gentle bound quivers."""
    return st.integers(0, 10**6).map(
        lambda s: generate(GeneratorConfig(seed=s, max_vertices=max_vertices, shape=shape,
                                           relation_density=0.6)))


def run_cli(argv, stdin_text=None):
    from gentle_lab.cli import run
    out = io.StringIO()
    code = run(argv, stdout=out, stdin=io.StringIO(stdin_text or ""))
    return code, out.getvalue()
