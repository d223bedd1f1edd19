import pytest

from sqiis import refconfig
from sqiis.engine import Engine


class ReferenceSetup:
    """Everything the shipped reference configuration provides, loaded once."""

    def __init__(self):
        self.tags, self.domains = refconfig.reference_registries()
        self.lexicons = refconfig.reference_lexicons(self.tags)
        self.weights = refconfig.reference_weight_matrix(self.tags, self.domains)
        self.handcrafted = refconfig.reference_handcrafted_rulebase()
        self.generated = refconfig.reference_generated_rulebase()


@pytest.fixture(scope="session")
def ref():
    return ReferenceSetup()


@pytest.fixture(scope="session")
def config_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("sqiis-config")
    refconfig.seed_config(directory)
    return directory


@pytest.fixture(scope="session")
def ref_engine(config_dir):
    return Engine.from_dir(config_dir)
