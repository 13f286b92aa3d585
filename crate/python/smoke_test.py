"""Smoke test for the pyparamod extension.

Build and install first:
    pip install --no-build-isolation ./crates/python
"""

import cmath
import json
import math

import pyparamod


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    chars = pyparamod.characters(12)
    assert len(chars) == 4 and all(order <= 2 for _, _, order, _ in chars)

    g = pyparamod.gauss_sum(3, 1)
    assert close(g, 1j * math.sqrt(3), 1e-12), g

    brute, closed = pyparamod.achisum(3, 1, 1, 1)
    assert close(brute, -1j * math.sqrt(3), 1e-9) and close(closed, brute, 1e-9)

    ident = [[float(i == j) for j in range(4)] for i in range(4)]
    value, tail = pyparamod.epstein(ident, 3.0)
    zeta2, zeta3 = math.pi**2 / 6, 1.2020569031595942
    four_squares = 2 * 8 * (1 - 4.0**-2) * zeta3 * zeta2 / math.pi**3
    assert close(value, four_squares, 1e-9), (value, four_squares)

    s = 2.6
    lat = pyparamod.eisenstein(7, 6, 2, 0, s, rep="lattice")
    sec = pyparamod.eisenstein(7, 6, 2, 0, s, rep="second")
    assert abs(lat - sec) <= 1e-6 * abs(lat), (lat, sec)

    numeric, expected = pyparamod.residue(7, 2, 1, 0)
    assert close(numeric, expected, 1e-3) and close(expected, 1.0, 1e-15)

    lhs, rhs, err = pyparamod.fe_check(11, 5, 1, 2, complex(2.4, 0.3))
    assert err <= 1e-5 * (1 + abs(lhs)), (lhs, rhs, err)

    hp = pyparamod.hp_matrix(5, 4).split()
    assert len(hp) == 16

    report = json.loads(pyparamod.suite("chars", max_modulus=20))
    assert report["summary"]["failed"] == 0 and report["summary"]["total"] > 0

    print("pyparamod", pyparamod.__version__, "smoke test ok")
    print("  E lattice/second at s=2.6:", lat, sec)
    print("  FE (p=11, N=5, quadratic chi):", cmath.polar(lhs)[0], "err", err)


if __name__ == "__main__":
    main()
