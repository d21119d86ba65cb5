"""
Brownian min-kernel: closed forms against generic routines
==========================================================

The covariance K(x, y) = min(x, y) on increasing points has a Cholesky
factor, determinant and inverse you can write down by hand.  This script
builds them both ways and prints the gaps.
"""

import numpy as np

import kernel_forge as kf

pts = [1.0, 2.0, 3.0, 4.0, 5.0]
spec = kf.brownian_min()
g = kf.gram(spec, pts)

print("Gram matrix on", pts)
print(g.entries)

# closed form: column j of L is sqrt(x_j - x_{j-1}) below the diagonal
closed = kf.brownian_cholesky_closed_form(pts)
generic = kf.cholesky(g)
print("\nclosed-form vs generic Cholesky, max gap:",
      np.max(np.abs(closed.L - generic.L)))

increments = np.diff([0.0] + pts)
det = np.prod(np.diag(closed.L)) ** 2
print("det(G) =", det, " product of increments =", np.prod(increments))

inv = kf.inverse_gram(g)
print("\ninverse is tridiagonal; largest entry off the three bands:",
      np.max(np.abs(np.triu(inv, 2))))

# the inverse's sparsity pattern is a path graph
graph = kf.induced_graph(spec, pts)
print("induced graph edges:", graph.edges)

# two eigenvalue routes
alt = kf.alt_cholesky_eigs(g, max_iter=200000)
jac = kf.jacobi_eigs(g.entries)
print("\nalternating-Cholesky eigenvalues:", np.round(alt.eigenvalues, 10))
print("Jacobi eigenvalues:              ", np.round(jac.eigenvalues, 10))

# minimum-norm interpolation = linear interpolation with a flat tail
f, norm_sq = kf.min_norm_interpolant([(1.0, 1.0), (2.0, 3.0)])
print("\ninterpolant through (1,1),(2,3): f(0.5) =", f(0.5),
      " f(1.5) =", f(1.5), " f(3.0) =", f(3.0))
print("squared norm:", norm_sq)

# delta functionals: members on a lattice, divergent on a shrinking grid
chain = [[float(n) for n in range(-k, k + 1) if n != 0] for k in (1, 2, 3)]
rep = kf.delta_membership(kf.brownian_line(), 1.0,
                          kf.SampleSet(points=chain[-1], chain=chain))
print("\ndelta at 1.0 over integer lattices:", rep.verdict, " sup =", rep.sup)

x = 0.5
chains = []
grid: set = set()
for k in range(3, 8):
    h = 2.0 ** (-k)
    grid |= {x + (i - 2) * h for i in range(5)}
    chains.append(sorted(grid))
rep = kf.delta_membership(kf.brownian_line(), x,
                          kf.SampleSet(points=chains[-1], chain=chains))
print("delta at 0.5 over refining grids:", rep.verdict,
      " norm sequence:", [float(v) for v in rep.sequence])
