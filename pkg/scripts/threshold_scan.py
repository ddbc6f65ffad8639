#!/usr/bin/env python3
"""Steering threshold r* (I_ab = 2) along r_a = r_b versus filter strength.

Prints one line per alpha for the singlet and the c = -0.8 Werner state,
plus S_ab at r_a = r_b = 0.6.
"""
import argparse
import math

import numpy as np
from scipy.optimize import brentq

from relsteer import channels, qstate, steering
from relsteer.channels import AccelerationParams, FilterParams

R = math.pi / 4


def I_ab(rho, r, alpha):
    out, _ = channels.filter_apply(channels.unruh_apply(rho, AccelerationParams(r, r)), FilterParams.equal(alpha))
    return steering.steering_I(out)


def threshold(rho, alpha, n=200):
    rs = np.linspace(0.0, R, n)
    vals = [I_ab(rho, r, alpha) - 2 for r in rs]
    if vals[0] <= 0:
        return 0.0
    for lo, hi, a, b in zip(rs, rs[1:], vals, vals[1:]):
        if a > 0 >= b:
            return brentq(lambda r: I_ab(rho, r, alpha) - 2, lo, hi, xtol=1e-12)
    return math.nan  # steerable over the whole range


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--alphas", type=float, nargs="*", default=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    args = parser.parse_args()

    states = {"singlet": qstate.singlet(), "werner-0.8": qstate.werner(qstate.WernerParams(-0.8, -0.8, -0.8))}
    print(f"{'state':<12} {'alpha':>5} {'r*':>8} {'S_ab(0.6)':>10}")
    for name, rho in states.items():
        for alpha in args.alphas:
            r_star = threshold(rho, alpha)
            s = steering.steerability(I_ab(rho, 0.6, alpha))
            shown = "none" if math.isnan(r_star) else f"{r_star:.4f}"
            print(f"{name:<12} {alpha:5.2f} {shown:>8} {s:10.4f}")


if __name__ == "__main__":
    main()
