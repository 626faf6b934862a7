"""Independent sympy expansions for the exact values frozen in the C++ tests.

Run: python3 tests/oracles/derive.py
Residual conventions match the library: Darboux lambda*g - X(g); metriplectic
C + lambda*G grad S - X; Nambu M*X - grad H1 x grad H2; Jacobi J.(curl J).
The clock symbol s stands for exp(t).
"""
from sympy import Matrix, Rational, diag, expand, symbols, simplify, cancel

x, y, z, s = symbols("x y z s")
V = [x, y, z]


def deriv(X, g, clock_rate=0):
    return expand(sum(X[i] * g.diff(V[i]) for i in range(3)) + s ** (1 + clock_rate) * g.diff(s))


def grad(h):
    return Matrix([h.diff(v) for v in V])


def curl(j):
    return Matrix([j[2].diff(y) - j[1].diff(z), j[0].diff(z) - j[2].diff(x), j[1].diff(x) - j[0].diff(y)])


def three_wave(g, d):
    return Matrix([-2 * y**2 + g * x + z + d * y, 2 * x * y + g * y - d * x, -2 * x * z - 2 * z])


def transform(X, a, c, c0=0):
    """du_i = s^c (a_i u_i s^c0 + s^a_i X_i(u s^-a)), variables renamed back to x, y, z."""
    sub = {V[i]: V[i] * s ** (-a[i]) for i in range(3)}
    return Matrix([expand(s**c * (a[i] * V[i] * s**c0 + s ** a[i] * X[i].subs(sub, simultaneous=True))) for i in range(3)])


def show(label, value):
    print(f"{label}: {value}")


show("(y - 1/2)*z", expand((y - Rational(1, 2)) * z))
show("d/dz (y*z - z/2)", (y * z - z / 2).diff(z))
show("grad(x^2+y^2+z)", list(grad(x**2 + y**2 + z)))
show("curl(y,0,x)", list(curl(Matrix([y, 0, x]))))
show("curl(3z,x,y)", list(curl(Matrix([3 * z, x, y]))))
g_, d_ = symbols("gamma delta")
show("div three-wave", simplify(sum(three_wave(g_, d_)[i].diff(V[i]) for i in range(3))))
show("X(y*z - z/2) at gamma=0, delta=1", expand(deriv(three_wave(0, 1), y * z - z / 2)))

ore = Matrix([(x + y - x * y) / -1, -y + 2 * Rational(-3, 2) * z - x * y, (x - z) / -1])
show("oregonator field", [expand(c) for c in ore])
show("X(x+y+z) oregonator", expand(deriv(ore, x + y + z)))
J = Matrix([3 * z, x, y - x * y * s**-2])
show("oregonator J.(curl J)", expand(J.dot(curl(J))))
Xo = transform(ore, (2, 2, 2), 0)
show("oregonator transformed", list(Xo))
show("oregonator X - J x grad H", list(simplify(Xo - J.cross(grad(x + y + z)))))

show("jacobi (y,0,x)", expand(Matrix([y, 0, x]).dot(curl(Matrix([y, 0, x])))))
show("(y, 2x+1) residual at delta=0, gamma=-1",
     expand((2 * x + 1) * y - deriv(three_wave(-1, 0), y)))

b, d, r = 1, 2, 1
hr5 = Matrix([y - z + b * x**2, -d * x**2 - y, -2 * x - r * z])
g5 = 2 * x**2 + y**2 / 2 + z**2 / 2 + 2 * x * y - 2 * x * z - y * z
show("HR item5 X(g)/g", cancel(deriv(hr5, g5) / g5))

euler = Matrix([x, y, z])
M = 1 / (x * y * z)
show("div(M*Euler)", simplify(sum((M * euler[i]).diff(V[i]) for i in range(3))))
show("Euler X(x^2+y^2+z^2)", expand(deriv(euler, x**2 + y**2 + z**2)))

show("case1 integral at t=0,(0,1,1)", (y * z - z / 2).subs({y: 1, z: 1}))

H1 = z * y - d_ / 2 * z
H2 = x**2 + y**2 + s**-2 * z
G = diag(-g_ / 2, -g_ / 2, 2 * z * s**2)
X = three_wave(g_, d_)
show("damped metriplectic uncorrected", list(simplify(grad(H1).cross(grad(H2)) - G * grad(H2) - X)))
H2b = x**2 + y**2 + z
show("damped-metriplectic H2 only", list(simplify(grad(H1).cross(grad(H2b)) - G * grad(H2b) - X)))
show("damped-metriplectic consistent", list(simplify(grad(H1).cross(grad(H2b)) - diag(-g_ / 2, -g_ / 2, 2 * z) * grad(H2b) - X)))

a_, b_, d2, p_, be, ga, al = symbols("a b d p beta gamma_ alpha")
HR = Matrix([y - z - a_ * x**3 + b_ * x**2 + al, be - d2 * x**2 - y, p_ * x + z - ga])
G = diag(a_ * x**3 - b_ * x**2, d2 * x**2, -p_ * x)
res = simplify(grad(x + y + z).cross(grad(y * z - ga * y - be * z)) - G * grad(x + y + z) - HR)
show("HR metriplectic (r=-1)", list(res))
show("HR metriplectic instance", list(res.subs({a_: 1, b_: 1, d2: 1, p_: 1, be: 1, ga: 0, al: 1})))

h, n1, n2, n3 = symbols("h nu1 nu2 nu3")
R = Matrix([h * y - n1 * x + y * z, h * x - n2 * y - x * z, -n3 * z + x * y])
G = Matrix([[n1, -h, 0], [-h, n2, z * n3 / y], [0, z * n3 / y, 0]])
show("rabinovich metriplectic", list(simplify(grad((x**2 + y**2) / 2).cross(grad((y**2 + z**2) / 2)) - G * grad((x**2 + y**2) / 2) - R)))

Xm = three_wave(-1, 0)
G = Matrix([[0, x / z, 0], [x / z, 0, 1], [0, 1, z / y]])
show("case5 metriplectic", list(simplify((-grad(x**2 + y**2 + z)).cross(grad(y * z)) - G * grad(y * z) - Xm)))

show("case5 scaled", list(transform(three_wave(-1, 0), (1, 1, 2), 1)))
show("rabinovich scaled", list(transform(R.subs({h: 0, n1: 1, n2: 1, n3: 1}), (1, 1, 1), 1)))
show("case1 scaled (delta=1)", list(transform(three_wave(0, 1), (0, 0, 2), 0)))
show("case3 (delta=1)", list(transform(three_wave(-2, 1), (2, 2, 2), 0)))
show("case2 scaled (delta=1)", list(transform(three_wave(-1, 1), (1, 1, 2), 1)))
show("div case5 scaled", sum(transform(three_wave(-1, 0), (1, 1, 2), 1)[i].diff(V[i]) for i in range(3)))
