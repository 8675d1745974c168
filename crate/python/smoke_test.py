"""Smoke test for the pyassignalg extension module.

Run after `pip install --no-build-isolation ./python` (or `maturin develop`):

    python python/smoke_test.py
"""

import json

import pyassignalg as A


def load(name):
    return A.corpus_document(name)


def main():
    assert "cp1_cubed_gkm" in A.corpus_names()

    r = json.loads(A.report(load("cp1_cubed_gkm"), degree_bound=4))
    assert r["schema"] == A.SCHEMA
    assert r["verdict"] is True
    assert r["result"]["rank"] == 8
    assert r["result"]["generator_degrees"] == [0, 1, 1, 1, 1, 2, 2, 2]

    k = json.loads(A.kirwan(load("cp1_cubed_gkm"), degree_bound=4))
    assert k["result"]["k_plus"]["generator_degrees"] == [1, 2, 2, 2]
    assert k["result"]["quotient"]["dims"] == [1, 4, 4, 4, 4]

    e = json.loads(A.extend(load("sphere_in_cp3_extension"), degree_bound=3))
    assert e["verdict"] is False
    assert e["result"]["solve"]["obstruction_degree"] == 1

    q = json.loads(A.quotient_circle(load("s3_strata"), ["1", "1"], degree_bound=4))
    assert q["result"]["quotient_dims"] == [1, 2, 2, 2, 2]

    c = json.loads(A.oracle_compare(load("n_fixed_points_gkm"), load("n_fixed_points_strata"), degree_bound=5))
    assert c["verdict"] is True

    ex = json.loads(A.examples(seed=3))
    assert ex["verdict"] is True, [c for c in ex["result"]["claims"] if not c["passed"]]

    try:
        A.validate('{"kind": "gkm", "torus_dim": 2, "components": []}')
    except ValueError as err:
        assert "nonempty_components" in str(err), err
    else:
        raise AssertionError("empty presentation accepted")

    print("pyassignalg smoke test passed")


if __name__ == "__main__":
    main()
