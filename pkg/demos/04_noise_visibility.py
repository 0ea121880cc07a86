"""White-noise visibility of the two violations.

Mixing the signal state with depolarizing noise shrinks the violations.
Over the factorized per-party measurement space the parity observables are
traceless for two particles total, so both functionals scale exactly
linearly in the signal weight p and the threshold is 2 / (pure value).
The steering violation, being larger, survives more noise than Bell.
"""
import math

from twocopy import (
    AngleQuad,
    BeamSplitterSetting,
    admix,
    bec_pair,
    bell_value,
    sector_trace_product,
    steering_value,
    visibility_threshold,
)

state = bec_pair(1)
q_steer = AngleQuad(0.0, math.pi / 2, 3.93, 2.90)
q_bell = AngleQuad(0.0, math.pi / 2, 3.93, 2.36)

print("linear scaling under factorized noise:")
base = steering_value(state, q_steer)
for p in (1.0, 0.8, 0.6):
    mixed = admix(state, p, noise="factorized")
    print(f"  p={p}: steering = {steering_value(mixed, q_steer):.6f}"
          f"   (p * pure = {p * base:.6f})")

p_steer = visibility_threshold(state, "steering", q_steer)
p_bell = visibility_threshold(state, "bell", q_bell)
print(f"\nthresholds (bisection):")
print(f"  steering: {p_steer:.6f}   shortcut 2/S = {2 / base:.6f}")
print(f"  bell:     {p_bell:.6f}   shortcut 2/|B| = {2 / abs(bell_value(state, q_bell)):.6f}")
print(f"  steering survives more noise: {p_steer:.3f} < {p_bell:.3f}")

print("\nsector depolarization is NOT traceless, so the shortcut fails there:")
balanced = BeamSplitterSetting.balanced
trace = sector_trace_product(1, 1, balanced(0.3), balanced(1.4))
print(f"  sector trace of the joint observable, one particle per system: {trace:+.4f}")
p_sector = visibility_threshold(state, "steering", q_steer, noise="sector")
print(f"  sector-noise steering threshold: {p_sector:.6f} (vs {p_steer:.6f})")
trace_diff = sector_trace_product(1, 1, balanced(0.3), balanced(1.4),
                                  alice2=balanced(2.0), sign=-1.0)
print(f"  difference combination A(phi1) - A(phi2) is traceless: {trace_diff:+.2e}")
