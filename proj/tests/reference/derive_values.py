"""Independent high-precision reference values frozen into the C++ tests.

Area integrals are evaluated in polar coordinates about the query point X:
with R(theta) the distance from X to the boundary along direction u(theta),

    integral |X - Y|^p dA          = int R^(p+2) / (p+2) dtheta
    gradient of the above at X     = -p int u R^(p+1) / (p+1) dtheta

which shares no code path with the boundary-integral formulas in the library.
Run with: python3 derive_values.py
"""
import mpmath as mp

mp.mp.dps = 30


def edge_pieces(poly, x):
    """Yield (theta0, theta1, h, phi) for each edge seen from x inside a convex CCW polygon."""
    n = len(poly)
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        ax, ay = a[0] - x[0], a[1] - x[1]
        bx, by = b[0] - x[0], b[1] - x[1]
        t0 = mp.atan2(ay, ax)
        t1 = mp.atan2(by, bx)
        while t1 < t0:
            t1 += 2 * mp.pi
        ex, ey = bx - ax, by - ay
        L = mp.sqrt(ex * ex + ey * ey)
        nx, ny = ey / L, -ex / L  # outward normal of a CCW edge
        h = ax * nx + ay * ny
        phi = mp.atan2(ny, nx)
        yield t0, t1, h, phi


def _split(t0, t1, phi):
    pts = [t0]
    for k in range(-2, 3):
        p = phi + 2 * k * mp.pi
        if t0 < p < t1:
            pts.append(p)
    pts.append(t1)
    return pts


def sigma_p(poly, x, p):
    total = mp.mpf(0)
    for t0, t1, h, phi in edge_pieces(poly, x):
        R = lambda t: h / mp.cos(t - phi)
        total += mp.quad(lambda t: R(t) ** (p + 2) / (p + 2), _split(t0, t1, phi))
    return total


def grad_p(poly, x, p):
    gx = gy = mp.mpf(0)
    for t0, t1, h, phi in edge_pieces(poly, x):
        R = lambda t: h / mp.cos(t - phi)
        pts = _split(t0, t1, phi)
        gx += mp.quad(lambda t: mp.cos(t) * R(t) ** (p + 1), pts)
        gy += mp.quad(lambda t: mp.sin(t) * R(t) ** (p + 1), pts)
    c = -mp.mpf(p) / (p + 1)
    return c * gx, c * gy


def minimizer(poly, p, start):
    f = lambda u, v: grad_p(poly, (u, v), p)
    return mp.findroot(lambda u, v: f(u, v), start)


def segment_mean_distance(a, b, x):
    L = mp.sqrt((b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2)
    val = mp.quad(lambda t: mp.sqrt((a[0] + t * (b[0] - a[0]) - x[0]) ** 2 + (a[1] + t * (b[1] - a[1]) - x[1]) ** 2), [0, 1])
    return val  # mean over the edge; the integral over arc length is val * L


def show(label, v):
    print(f"{label}: {mp.nstr(v, 20)}")


if __name__ == "__main__":
    mp.mp.dps = 30
    show("segment (0,0)-(1,0) at (0,1)", segment_mean_distance((0, 0), (1, 0), (0, 1)))
    show("  closed form sqrt2/2 + asinh(1)/2", mp.sqrt(2) / 2 + mp.asinh(1) / 2)

    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    show("square sigma at centre", sigma_p(square, (mp.mpf(1) / 2, mp.mpf(1) / 2), 1))
    show("  closed form (sqrt2 + ln(1+sqrt2))/6", (mp.sqrt(2) + mp.log(1 + mp.sqrt(2))) / 6)

    tri = [(0, 0), (4, 0), (0, 3)]
    c = (mp.mpf(4) / 3, mp.mpf(1))
    show("345 sigma at centroid", sigma_p(tri, c, 1))
    gx, gy = grad_p(tri, c, 1)
    show("345 gradient at centroid x", gx)
    show("345 gradient at centroid y", gy)

    m = minimizer(tri, 1, (1.27, 0.99))
    show("345 median x", m[0])
    show("345 median y", m[1])
    show("345 sigma at median", sigma_p(tri, (m[0], m[1]), 1))

    m3 = minimizer(tri, 3, (1.39, 1.01))
    show("345 power-3 minimizer x", m3[0])
    show("345 power-3 minimizer y", m3[1])

    inc = (mp.mpf(1), mp.mpf(1))
    means = [segment_mean_distance(tri[i], tri[(i + 1) % 3], inc) for i in range(3)]
    for i, v in enumerate(means):
        show(f"345 incenter edge mean {i}", v)
    show("345 incenter spread", (max(means) - min(means)) / max(means))
