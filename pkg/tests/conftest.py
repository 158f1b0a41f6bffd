import pathlib

import pytest


@pytest.fixture(scope="session")
def fixtures_dir():
    return pathlib.Path(__file__).resolve().parent.parent / "src" / "abelianj" / "fixtures"
