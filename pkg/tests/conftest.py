import os
import random

import pytest

from teamlib.config import OPTIMIZED, REFERENCE
from teamlib.kripke import KripkeModel, enumerate_models, identity_model

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
MODELS_DIR = os.path.join(ROOT, "models")


@pytest.fixture
def two_world_model():
    """W = {w, v}, no edges, p true only at v."""
    return KripkeModel.build(["p"], ["w", "v"], [], {"p": ["v"]})


@pytest.fixture
def chain_model():
    """w -> v -> u, with a loop at u; p true at v and u."""
    return KripkeModel.build(
        ["p"], ["w", "v", "u"], [("w", "v"), ("v", "u"), ("u", "u")], {"p": ["v", "u"]}
    )


@pytest.fixture
def identity_pair():
    """Identity relation on {a, b}, p true only at b."""
    return identity_model(["p"], ["a", "b"], {"p": ["b"]})


@pytest.fixture(scope="session")
def small_models():
    """Every model with at most two worlds over {p}."""
    return list(enumerate_models(2, ("p",)))


@pytest.fixture(scope="session")
def small_models_pq():
    """Every model with at most two worlds over {p, q}."""
    return list(enumerate_models(2, ("p", "q")))


@pytest.fixture(scope="session")
def identity_models():
    """Identity-relation models over {p} with one to three worlds."""
    models = []
    for n in range(1, 4):
        worlds = [f"w{i}" for i in range(n)]
        for mask in range(2 ** n):
            models.append(identity_model(["p"], worlds, {"p": [w for i, w in enumerate(worlds) if mask >> i & 1]}))
    return models


@pytest.fixture(params=[REFERENCE, OPTIMIZED], ids=["reference", "optimized"])
def eval_config(request):
    return request.param


@pytest.fixture
def models_dir():
    return MODELS_DIR


@pytest.fixture(scope="session")
def three_world_models():
    """Every three-world model over {p}: 2^9 relations times 2^3 valuations."""
    return [m for m in enumerate_models(3, ("p",)) if len(m.worlds) == 3]


@pytest.fixture(scope="session")
def sampled_models(small_models, three_world_models):
    """All models up to two worlds plus a fixed sample of 150 three-world models."""
    return small_models + random.Random(2013).sample(three_world_models, 150)
