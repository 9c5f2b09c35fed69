"""Smoke test for the latglue Python bindings.

Build and install first:  pip install -e crates/python --no-build-isolation
Then run:                 python python/smoke_test.py
"""

import latglue
from latglue import ExactScalar


def main():
    s = ExactScalar("4/3-2/3√3")
    assert s.a == "4/3" and s.b == "-2/3"
    assert s + ExactScalar("2/3√3") == ExactScalar("4/3")
    assert abs(float(s) - (4 / 3 - 2 / 3 * 3 ** 0.5)) < 1e-12

    assert latglue.kissing_l12() == 648
    assert latglue.densities() == {"l4": "1/12", "l8": "1/96", "l12": "1/32", "q10": "1/32"}
    assert latglue.lemma_scan()["violations"] == 0
    titles = [t["title"] for t in latglue.tables()]
    assert len(titles) == 4, titles

    par, perp = latglue.split_norms(["1/3", "1/3", "-2/3", "1/3"])
    assert par + perp == ExactScalar("8/3")

    w = latglue.Window()
    assert w.area() == ExactScalar("2") and w.diameter_sq() == ExactScalar("8/3")
    assert len(w.included_vertices()) == 6

    patch = latglue.generate_patch(w, 6)
    assert latglue.PackedPoint(["0", "0", "0", "0"], [0, 0, 0, 0]) in patch
    again = latglue.patch_from_json(w, latglue.patch_to_json(w, patch))
    assert again == patch

    cert = latglue.verify_packing(w, patch)
    assert cert["min_dist_sq"] == ExactScalar("4") and cert["forbidden_pairs"] == 0

    k = latglue.kissing_q10()
    assert k["count"] == 378
    allowed = {"-1", "0", "1/2", "-1/2", "1/4-1/12√3", "-1/4+1/12√3", "1/4+1/12√3", "-1/4-1/12√3"}
    assert set(k["cosines"]) <= allowed

    t = latglue.extract_tiling(w, patch, 6)
    assert t["edge_len_sq"] == ExactScalar("2/3+1/3√3")
    assert t["svg"].startswith("<svg")

    try:
        latglue.generate_patch(w, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("bound 0 accepted")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
