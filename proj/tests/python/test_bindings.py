import os
from pathlib import Path

import pytest

import exangulate

FIXTURES = Path(os.environ.get("EXANGULATE_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


@pytest.fixture(scope="module")
def cluster():
    return exangulate.load(FIXTURES / "a4-cluster.exg")


def test_generators(cluster):
    assert cluster.generators == ["4", "3/4", "2/3/4", "1/2/3", "1/2", "1"]
    assert cluster.dimension_vector("2/3/4") == [0, 1, 1, 1]
    assert (cluster.prime, cluster.n) == (2, 2)


def test_dimensions(cluster):
    assert cluster.hom_dim("3/4", "1/2/3") == 1
    assert cluster.quotient_hom_dim("3/4", "1/2/3") == 0
    assert cluster.ext_dim("1", "4") == 1
    assert cluster.ext_dim("1+1", "4") == 2
    assert cluster.ext_dim("4", "1") == 0


def test_check(cluster):
    report = cluster.check()
    assert report["schema"] == 1
    assert report["exit_code"] == 0
    assert all(a["ok"] for a in report["core"])


def test_localize_cluster(cluster):
    report = cluster.localize()
    assert report["verdict"] == "fails weak-kc"
    assert report["exit_code"] == 20
    assert report["localization"]["weak_kc"]["witness"]["test_object"] == "1/2/3"


def test_localize_trivial():
    report = exangulate.load(FIXTURES / "a4-trivial.exg").localize()
    assert report["verdict"] == "2-exangulated"
    assert report["localization"]["equivalence"]["ok"]


def test_input_error():
    with pytest.raises(exangulate.InputError, match=r"t\.exg:1:1: error: missing \[quiver\]"):
        exangulate.Session.parse("", "t.exg")
    assert issubclass(exangulate.InputError, ValueError)


def test_unknown_object(cluster):
    with pytest.raises(exangulate.InputError):
        cluster.hom_dim("4", "2/3")
