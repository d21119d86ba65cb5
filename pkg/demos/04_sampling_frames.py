# Sampling sets for the sinc kernel: Parseval identities, frame bounds,
# reconstruction, and a witness function for a defective sampling set.

import numpy as np

import kernel_forge as kf

sinc = kf.shannon()

# the integer lattice is a Parseval frame; watch the deficit close
print("Parseval deficit at x = 0.5 vs truncation window:")
for trunc in (100, 1000, 10000):
    rep = kf.parseval_check(sinc, "integers", [0.5], truncation=trunc)
    print(f"  N = {trunc:5d}: deficit {rep.parseval_deficit:.3e}"
          f"  (tail bound {rep.tail_bound:.3e})  verdict {rep.verdict}")

# finite sections still have clean frame bounds
a, b = kf.frame_bounds(sinc, [float(n) for n in range(-5, 6)])
print(f"\nframe bounds on the 11-point sinc lattice: a = {a:.12f},"
      f" b = {b:.12f}")

a, b = kf.frame_bounds(kf.brownian_min(), [1.0, 2.0, 3.0])
print(f"frame bounds for the min kernel on {{1,2,3}}: a = {a:.6f},"
      f" b = {b:.6f}")

# reconstruct a band-limited function from its lattice samples
target = lambda x: np.sinc(x - 1.0) + 2.0 * np.sinc(x - 3.0)
nodes = [float(n) for n in range(0, 6)]
recon = kf.frame_reconstruct(sinc, nodes, [target(n) for n in nodes], [2.5])
print("\nreconstruction at x = 2.5:", recon[0], " target:", target(2.5))

# positive integers only: not a Parseval frame, and here is a witness
rep = kf.parseval_check(kf.brownian_line(), "positive-integers", [0.5],
                        truncation=400)
print("\npositive integers under the line kernel:", rep.verdict,
      f"(deficit {rep.parseval_deficit:.1f})")

w = kf.sawtooth_witness([float(n) for n in range(1, 12)])
print("sawtooth witness on knots 1..11:")
print("  values at knots:", w(w.knots))
print("  value between knots:", w(1.5), w(2.5), w(10.5))
print("  squared norm:", w.norm_sq, " (partial sum of 1/k^2)")
print("  inner products with knot sections:", w.knot_inner_products())
