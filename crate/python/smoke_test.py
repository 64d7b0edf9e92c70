"""Smoke test for the Python extension.

Build it first:
    cargo build --release -p rmdecode-py
then run this script from the repository root. It copies the built library
next to itself as rmdecode.so unless RMDECODE_LIB points elsewhere.
"""

import os
import shutil
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    lib = os.environ.get("RMDECODE_LIB")
    if lib is None:
        for name in ("librmdecode_py.so", "librmdecode_py.dylib"):
            cand = os.path.join(ROOT, "target", "release", name)
            if os.path.exists(cand):
                lib = cand
                break
    if lib is None:
        sys.exit("extension not built; run cargo build --release -p rmdecode-py")
    tmp = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(tmp, "rmdecode.so"))
    sys.path.insert(0, tmp)
    import rmdecode

    return rmdecode


def main():
    rm = load()

    # X + Y over GF(3) on the whole field
    xy = [([1, 0], 1), ([0, 1], 1)]
    assert rm.encode(3, [0, 1, 2], 2, 1, xy) == [0, 1, 2, 1, 2, 0, 2, 0, 1]

    s = [0, 1, 2, 3]
    word = rm.encode(5, s, 2, 1, xy)
    noisy, unc = rm.corrupt(5, s, 2, 1, word, "errors:5", seed=7)
    assert sum(a != b for a, b in zip(word, noisy)) == 5
    assert all(u == (0, 1) for u in unc)

    terms, dist = rm.decode(5, s, 2, 1, noisy, "bivariate")
    assert sorted(terms) == sorted(xy), terms
    assert dist == (5, 1)

    terms, _ = rm.decode(5, s, 2, 1, noisy, "soft", uncertainties=[(0, 1)] * 16)
    assert sorted(terms) == sorted(xy)

    # a tie between the constants 0 and 1
    assert rm.decode(5, s, 2, 0, [0] * 8 + [1] * 8, "bivariate") is None

    listed = rm.decode(5, [0, 1, 2, 3, 4], 1, 1, [1, 3, 0, 2, 0], "rs-list", radius="2")
    (lterms, ldist), = listed
    assert sorted(lterms) == [([0], 1), ([1], 2)] and ldist == 1

    try:
        rm.decode(5, s, 2, 1, noisy, "rs")
    except ValueError as e:
        assert "m = 2" in str(e)
    else:
        raise AssertionError("rs accepted a bivariate word")

    for ident, passed, detail in rm.selftest([3, 4], quick=True):
        assert passed, (ident, detail)

    print("smoke test passed")


if __name__ == "__main__":
    main()
