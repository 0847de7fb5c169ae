"""Smoke test for the Python bindings.

Build first with `pip install --no-build-isolation -e crates/python`.
"""

import perverse_steenrod_py as ps


def main():
    assert "rp2" in ps.corpus_names()

    rp2 = ps.FilteredComplex.trivial("rp2", 2)
    assert len(rp2) == 31 and rp2.n == 2
    b = ps.Blowup(rp2)
    assert b.cohomology_dims() == [1, 1, 1]
    assert b.square_matrix(1, 1) == [[1]]
    coords, degree = b.square(1, [True], 1)
    assert coords == [1]
    assert degree == ["-inf", "-inf"]

    c = ps.Blowup(ps.FilteredComplex.cone("rp2", 3))
    assert c.cohomology_dims("0,0,0") == [1, 0, 0, 0]
    assert c.cohomology_dims("0,0,2") == [1, 1, 1, 0]

    again = ps.FilteredComplex.from_json(rp2.to_json())
    assert again.to_json() == rp2.to_json()

    ok, report = ps.Blowup(ps.FilteredComplex.coneoff("mobius", 2)).verify(seed=0, pairs=20)
    assert ok, report

    try:
        b.cohomology_dims("0,x")
    except ValueError:
        pass
    else:
        raise AssertionError("bad perversity accepted")

    print("smoke ok")


if __name__ == "__main__":
    main()
