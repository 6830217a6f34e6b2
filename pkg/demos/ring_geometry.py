#!/usr/bin/env python3
"""Build rotating rings of equal masses and audit their force balance.

The ring of n unit masses rotating with period 1 is in equilibrium only at
one radius, fixed by the cosecant sum S(n) = sum_{j<n} csc(pi*j/n) through
radius^3 * 16*pi^2 = S(n). This script tabulates the radius, checks the
Newtonian balance directly from pairwise forces, and audits the closed form
S(n) = 4/n sometimes quoted for the sum (spoiler: it fails for every n).
"""

from ringaxis import build_config, check_csc_identity, ring_residual

print("Ring geometry")
print("=============")
print(f"{'n':>4} {'csc_sum':>14} {'radius':>12} {'force residual':>15}")
for n in (2, 3, 4, 5, 8, 16, 32, 64):
    config = build_config(n)
    residual = ring_residual(config, t=0.0, samples=8)
    print(f"{n:>4} {config.csc_sum:>14.8f} {config.radius:>12.8f} {residual:>15.2e}")

print()
print("The residual compares the analytic centripetal acceleration of every")
print("primary against the raw pairwise gravitational sum; values at rounding")
print("level confirm the radius formula. A deliberately doubled radius breaks")
print("the balance by orders of magnitude:")
import dataclasses

config = build_config(4)
broken = dataclasses.replace(config, radius=2 * config.radius)
print(f"  n=4 doubled radius -> residual {ring_residual(broken):.3f}")

print()
print("Audit of the closed form S(n) = 4/n")
print("-----------------------------------")
print(f"{'n':>5} {'S(n) summed':>14} {'4/n':>10} {'holds':>6}")
for n in (2, 3, 4, 10, 100, 472, 473, 1000):
    check = check_csc_identity(n)
    print(f"{n:>5} {check.lhs:>14.6f} {check.rhs:>10.6f} {str(check.holds):>6}")

print()
print("The closed form is wrong everywhere (already n=2: 1 != 2), and the")
print("summed value crosses the 4n line between n=472 and n=473 -- the")
print("boundary that the conjugate-point scan (see conjugate_points.py)")
print("turns into a qualitative change of the stability verdict.")
