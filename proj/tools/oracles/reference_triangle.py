"""Exact P2 elasticity and P2-P1 divergence matrices on the reference
triangle (0,0), (1,0), (0,1) with lambda = 2, mu = 1. Prints a C++ header
with the values frozen as fractions."""
import sympy as sp

x, y = sp.symbols("x y")
l = [1 - x - y, x, y]
n = [l[i] * (2 * l[i] - 1) for i in range(3)] + [4 * l[0] * l[1], 4 * l[1] * l[2], 4 * l[2] * l[0]]
lam, mu = sp.Integer(2), sp.Integer(1)
D = sp.Matrix([[lam + 2 * mu, lam, 0], [lam, lam + 2 * mu, 0], [0, 0, mu]])


def integrate(f):
    return sp.integrate(sp.integrate(f, (y, 0, 1 - x)), (x, 0, 1))


S = sp.zeros(3, 12)
for j in range(6):
    S[0, 2 * j] = sp.diff(n[j], x)
    S[1, 2 * j + 1] = sp.diff(n[j], y)
    S[2, 2 * j] = sp.diff(n[j], y)
    S[2, 2 * j + 1] = sp.diff(n[j], x)
A = (S.T * D * S).applyfunc(sp.expand).applyfunc(integrate)
B = sp.zeros(3, 12)
for i in range(3):
    for j in range(12):
        B[i, j] = integrate(sp.expand(l[i] * (S[0, j] + S[1, j])))
L = sp.zeros(3, 3)
for i in range(3):
    for j in range(3):
        L[i, j] = integrate(sp.diff(l[i], x) * sp.diff(l[j], x) + sp.diff(l[i], y) * sp.diff(l[j], y))


def emit(name, M):
    rows = []
    for i in range(M.rows):
        rows.append("    {" + ", ".join(f"{sp.numer(v)}.0 / {sp.denom(v)}.0" for v in M.row(i)) + "}")
    return f"inline constexpr double {name}[{M.rows}][{M.cols}] = {{\n" + ",\n".join(rows) + "};\n"


print("// Generated by tools/oracles/reference_triangle.py; do not edit.")
print("#pragma once\n\nnamespace oracle {\n")
print(emit("kElasticity", A))
print(emit("kDivergence", B))
print(emit("kLaplacian", L))
print("}  // namespace oracle")
