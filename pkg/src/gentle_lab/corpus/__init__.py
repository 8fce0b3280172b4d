"""Bundled example bound quivers."""
from importlib import resources

NAMES = ("e1", "e2", "e3", "kronecker")


def corpus_text(name):
    return resources.files(__name__).joinpath(f"{name}.quiver").read_text()


def load(name):
    from ..quiver_core import parse_bound_quiver
    return parse_bound_quiver(corpus_text(name))
