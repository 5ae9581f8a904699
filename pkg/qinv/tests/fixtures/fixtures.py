import os
from typing import Any

from qinv import codec

FIXTURES_DIR = os.path.dirname(os.path.abspath(__file__))


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES_DIR, name)


def load_fixture(name: str) -> Any:
    return codec.load_json(fixture_path(name))


def load_embedding(name: str):
    return codec.embedding_from_json(load_fixture(name))

