import cmath
from pathlib import Path

import pytest

from shadowvol.cli import load_job

ROOT = Path(__file__).resolve().parent.parent
JOBS = ROOT / "src" / "shadowvol" / "jobs"
DATA = Path(__file__).resolve().parent / "data"

T_MINUS = (-1 - cmath.sqrt(3) * 1j) / 2  # t^2 + t + 1 = 0, the volume-positive root
T_PLUS = (-1 + cmath.sqrt(3) * 1j) / 2

CORPUS = {
    "fig8": JOBS / "fig8.json",
    "fig8_conj": JOBS / "fig8_conj.json",
    "trefoil": JOBS / "trefoil.json",
    "trefoil3": DATA / "trefoil3.json",
    "knot52": DATA / "knot52.json",
    "knot61": DATA / "knot61.json",
    "whitehead": DATA / "whitehead.json",
}


@pytest.fixture(scope="session")
def fig8_job():
    return load_job(JOBS / "fig8.json")


@pytest.fixture(scope="session")
def fig8_conj_job():
    return load_job(JOBS / "fig8_conj.json")


@pytest.fixture(scope="session")
def trefoil_job():
    return load_job(JOBS / "trefoil.json")


@pytest.fixture(scope="session", params=sorted(CORPUS))
def corpus_job(request):
    return load_job(CORPUS[request.param])
