"""Time the numba kernels against their numpy twins on realistic workloads.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from extquot import _np_kernels
from extquot._accel import HAVE_NUMBA
from extquot.bernstein import InertialCase
from extquot.setups import bundled


def workloads():
    b4 = bundled()["b4_weyl_r4"].group
    s8 = InertialCase.gl(1, 8).setup.group
    rng = np.random.default_rng(0)
    x8 = np.exp(rng.normal(size=8) + 1j * rng.uniform(0, 6, 8))
    pts = np.exp(rng.normal(size=(20_000, 8)) + 1j * rng.uniform(0, 6, (20_000, 8)))
    n = 4
    perm = _np_kernels.grid_action(b4.mats, n)
    gs, xs = np.nonzero(perm == np.arange(perm.shape[1])[None, :])
    conj = b4.conjugation_table()
    images = _np_kernels.monomial_images(s8.mats, x8)
    return {
        "grid_action  B4, N=4": lambda k: k.grid_action(b4.mats, n),
        "pair orbits  B4, N=4": lambda k: k.pair_orbit_canon(perm, conj, gs, xs),
        "monomial_images  S8": lambda k: k.monomial_images(s8.mats, x8),
        "lexmin_row  S8 orbit": lambda k: k.lexmin_row(images, 1e-9),
        "apply_many  20k pts": lambda k: k.monomial_apply_many(s8.mats[12345], pts),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"numpy": _np_kernels}
    if HAVE_NUMBA:
        from extquot import _jit_kernels
        backends["numba"] = _jit_kernels
    print(f"{'kernel':<24}" + "".join(f"{b:>12}" for b in backends) + "   speedup")
    for name, fn in workloads().items():
        times = {}
        for b, mod in backends.items():
            fn(mod)  # compile / warm caches
            times[b] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        cols = "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        speed = f"{times['numpy'] / times['numba']:>8.1f}x" if "numba" in times else ""
        print(f"{name:<24}{cols}{speed}")


if __name__ == "__main__":
    main()
