"""Shared fixtures: corpus models and seeded random generators."""

from pathlib import Path
import random

import pytest

from src.io import load_model

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def corpus_model(name: str):
    return load_model(CORPUS / name)


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def coffee():
    return corpus_model("coffee.pta")


@pytest.fixture(scope="session")
def coffee_lu():
    return corpus_model("coffee_lu.pta")


@pytest.fixture(scope="session")
def rational_only():
    return corpus_model("rational_only.pta")


@pytest.fixture(scope="session")
def integer_only():
    return corpus_model("integer_only.pta")


@pytest.fixture(scope="session")
def chain():
    return corpus_model("chain.mc")


@pytest.fixture(scope="session")
def intervals():
    return corpus_model("intervals.imc")


@pytest.fixture(scope="session")
def param_intervals():
    return corpus_model("param_intervals.pimc")


@pytest.fixture(scope="session")
def robot():
    return corpus_model("robot.mts")


@pytest.fixture(scope="session")
def loan():
    return corpus_model("loan.ppn")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)
