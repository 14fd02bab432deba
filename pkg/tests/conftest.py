import json
from importlib import resources

import pytest

from phonocoach.categories import load_categories
from phonocoach.feedback import load_feedback_assets
from phonocoach.lif import LifParams
from phonocoach.patterns import generate_bank
from phonocoach.therapy import load_corpus, load_therapy_config


@pytest.fixture(scope="session")
def configs():
    return load_categories()


@pytest.fixture(scope="session")
def lif_params():
    return LifParams()


@pytest.fixture(scope="session")
def bank(configs, lif_params):
    return generate_bank(configs, lif_params)


@pytest.fixture(scope="session")
def tconfig():
    return load_therapy_config()


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def assets():
    return load_feedback_assets()


@pytest.fixture(scope="session")
def fixture_doc():
    text = (
        resources.files("phonocoach.data")
        .joinpath("fixtures/hello_good_morning.json")
        .read_text("utf-8")
    )
    return json.loads(text)
