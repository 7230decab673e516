#!/usr/bin/env python3
"""Smoke test for the hardy_lab_py extension module.

Builds the extension with cargo, stages it under an importable name, and
checks a handful of laboratory results end to end. Run from anywhere:

    python3 python/smoke_test.py
"""

import json
import math
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_module() -> Path:
    """Builds the extension module and returns a directory containing it."""
    subprocess.run(
        [
            "cargo",
            "build",
            "-p",
            "hardy-lab-py",
            "--release",
            "--features",
            "extension-module",
        ],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "release" / "libhardy_lab_py.so"
    if not built.exists():  # e.g. macOS naming
        built = REPO / "target" / "release" / "libhardy_lab_py.dylib"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="hardy-lab-py-"))
    shutil.copy2(built, stage / f"hardy_lab_py{suffix}")
    return stage


def approx(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import hardy_lab_py as lab

    # The documented example pair at the quarter rotation.
    verdict = json.loads(lab.classify_json("i", "0.9,0.5"))
    assert verdict["dynamics"] == "NotHypercyclic", verdict["dynamics"]
    assert verdict["grade"] == "ProvenByTheorem", verdict["grade"]

    verdict = json.loads(lab.classify_json("i", "0.99,0.5"))
    assert verdict["dynamics"] == "Hypercyclic", verdict["dynamics"]
    assert verdict["grade"] == "ProvenByTheorem", verdict["grade"]

    # Four-step product of the first example symbol: extrema on the disk.
    product = lab.product_coefficients(lab.named_symbol("phi0"), 1j, 4)
    assert approx(abs(product[0]), 0.6561, 1e-12)
    assert approx(abs(product[4]), 0.0625, 1e-12)
    sup_lower, _, sup_envelope, inf_upper, _, _ = lab.modulus_extrema(product)
    assert approx(sup_lower, 0.7186, 1e-6), sup_lower
    assert approx(inf_upper, 0.5936, 1e-6), inf_upper
    assert sup_envelope >= sup_lower

    # Boundary curve agrees with direct evaluation and the sampled sup.
    curve = lab.boundary_curve(product, 1.0, 256)
    assert len(curve) == 256
    theta, value = curve[32]  # theta = pi/4, a modulus peak
    assert approx(abs(value), 0.7186, 1e-9), abs(value)
    assert approx(lab.sup_modulus(product, 1.0, 256), 0.7186, 1e-9)
    direct = lab.evaluate(product, complex(math.cos(theta), math.sin(theta)))
    assert abs(direct - value) <= 1e-12

    # The unit-origin family: one interior zero at the closed-form point.
    psi = lab.psi_symbol(0.5, 64)
    assert lab.count_zeros(psi, 1.0, 2048) == 1
    zero = lab.psi_zero(0.5)
    assert approx(zero, 0.8, 1e-12)
    assert abs(lab.evaluate(psi, complex(zero, 0.0))) <= 1e-6
    verdict = json.loads(lab.classify_json("golden", "psi:0.5"))
    assert verdict["dynamics"] == "Hypercyclic", verdict["dynamics"]
    assert verdict["grade"] == "ProvenByTheorem", verdict["grade"]

    # Hardy-space numerology: kernel norm and a decaying orbit. Constant
    # starting vectors are scaled by phi(0) each step, so the norms of the
    # power-bounded example decay like 0.9^n.
    kernel = lab.kernel_coefficients(0.3, 128)
    assert approx(lab.h2_norm(kernel), 1.0 / math.sqrt(1.0 - 0.09), 1e-12)
    logs = lab.orbit_log_norms(1j, lab.named_symbol("phi0"), [1.0], 64, 64)
    assert len(logs) == 65
    assert approx(logs[-1], 64.0 * math.log(0.9), 1e-9), logs[-1]

    print("OK")


if __name__ == "__main__":
    main()
