from __future__ import annotations

import datetime as dt
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from moodtrends.corpus import EmailRecord
from moodtrends.lexicon import compile_lexicon, load_default_lexicon

TESTS_DIR = Path(__file__).parent
PORTER_DATA = TESTS_DIR / "data" / "porter"


@pytest.fixture(scope="session")
def default_lexicon():
    return load_default_lexicon()


@pytest.fixture(scope="session")
def matcher(default_lexicon):
    return compile_lexicon(default_lexicon)


def make_record(body: str, rec_id: str = "r1", compose: str = "2006-03-01",
                delivery: str = "2010-03-01") -> EmailRecord:
    return EmailRecord(
        id=rec_id,
        compose_date=dt.date.fromisoformat(compose),
        delivery_date=dt.date.fromisoformat(delivery),
        body=body,
    )


@pytest.fixture
def record_factory():
    return make_record
