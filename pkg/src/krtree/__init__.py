"""Karnofsky-Rhodes expansions of finite semigroups and their actions on Chiswell trees."""
from .errors import InputError, InvariantError, KRError, ResourceError
from .semigroup import FiniteSemigroup, Transformation, adjoin_identity, from_table, from_transformations, greens
from .cayley import LEFT, RIGHT, CayleyGraph, Edge
from .kr import KRSemigroup, build_kr, build_kr_left, build_kr_right
from .chiswell import ChiswellTree, EllipticMap, build_tree, left_action, make_context, right_action
from .semaphore import IdealSpec, SemaphoreCode, acting_semigroup, code_from_ideal, example_pipeline
from .inputs import load_fixture, load_spec, parse_spec

__version__ = "0.1.0"
