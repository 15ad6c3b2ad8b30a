"""Smoke test of the python bindings: a few end-to-end calls."""

import cmath
import math
import os
import sys

import qhg


def close(a, b, tol=1e-8):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    N = qhg.LevelN(3)
    assert N.n == 3 and N.m == 1
    assert close(N.zeta, cmath.exp(2j * cmath.pi / 3))

    # |g(1)| = sqrt(N)
    assert close(abs(qhg.g_func(1.0, N)), math.sqrt(3))

    # inverse identity of the basic tensor
    up = cmath.exp(0.3 + 0.2j)
    vp = (1 - up ** 3) ** (1 / 3)
    L = qhg.ln_tensor(up, vp, N)
    Linv = qhg.ln_tensor_inv(up, vp, N)
    assert qhg.identity_defect(qhg.compose(L, Linv)) < 1e-10

    # the shipped figure-eight mesh validates and cross-checks
    mesh = qhg.build_fig8_complete_mesh()
    assert mesh.validate_I().ok()
    assert mesh.validate_flattened().ok()
    assert mesh.validate_charged().ok()
    wit = qhg.fig8_crosscheck(N)
    assert wit.equal

    # volume anchor at level 1
    vol = 6.0 * qhg.lobachevsky(math.pi / 3)
    prod = qhg.r1_scalar(mesh_tet(mesh, 0)) * qhg.r1_scalar(mesh_tet(mesh, 1))
    assert close(abs(prod), math.exp(vol / math.pi), tol=1e-6)

    # pentagon identity once
    assert qhg.pentagon_check(0.4 + 0.7j, 0.6 + 0.5j, N).equal

    # mesh file round trip
    here = os.path.dirname(os.path.abspath(__file__))
    m2 = qhg.load_mesh_file(os.path.join(here, "..", "data", "fig8.json"))
    assert m2.n_tets == 2 and m2.validate_I().ok()

    print("python smoke: ok")


def mesh_tet(mesh, i):
    # rebuild the decorated tetrahedra of the complete structure
    w = cmath.exp(1j * cmath.pi / 3)
    if i == 0:
        return qhg.FlatChargedTet(w, [0, -1, 0], [0, 1, 0], 1)
    return qhg.FlatChargedTet(w.conjugate(), [0, 1, 0], [0, 1, 0], -1)


if __name__ == "__main__":
    sys.exit(main())
