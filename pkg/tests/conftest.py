import pathlib

import pytest

from ldcs import load_kb_file

FIXTURE = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "demo.tsv"
GOLDENS = pathlib.Path(__file__).resolve().parent / "goldens"


@pytest.fixture(scope="session")
def kb():
    return load_kb_file(str(FIXTURE))
