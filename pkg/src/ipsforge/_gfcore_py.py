"""Pure-Python kernel for F_p[t] coefficient-vector arithmetic.

Twin of the compiled ``_gfcore`` extension; selected by ``_kernel`` when the
extension is unavailable or ``IPSFORGE_PURE_PY=1``. Vectors are tuples of ints
reduced mod p; ``modulus`` is the monic modulus as a tuple of length k+1.
Everything here is exact integer arithmetic.
"""

BACKEND = "python"


def vadd(a, b, p):
    return tuple((x + y) % p for x, y in zip(a, b))


def vsub(a, b, p):
    return tuple((x - y) % p for x, y in zip(a, b))


def vneg(a, p):
    return tuple((-x) % p for x in a)


def vsmul(a, s, p):
    s %= p
    return tuple((x * s) % p for x in a)


def vmul(a, b, p, modulus):
    """Product of a and b in F_p[t]/(modulus): convolution then reduction."""
    k = len(a)
    if k == 1:
        return ((a[0] * b[0]) % p,)
    conv = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                conv[i + j] += ai * bj
    for i in range(2 * k - 2, k - 1, -1):
        c = conv[i] % p
        if c:
            base = i - k
            for j in range(k):
                conv[base + j] -= c * modulus[j]
    return tuple(c % p for c in conv[:k])


def vpow(a, e, p, modulus):
    k = len(a)
    result = (1,) + (0,) * (k - 1)
    if e == 0:
        return result
    acc = tuple(a)
    while True:
        if e & 1:
            result = vmul(result, acc, p, modulus)
        e >>= 1
        if not e:
            return result
        acc = vmul(acc, acc, p, modulus)


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(num, den, p):
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], -1, p)
    quo = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = (num[i] * inv_lead) % p
        if c:
            quo[i - dd] = c
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return quo, _poly_trim(num)


def vinv(a, p, modulus):
    """Inverse of a in F_p[t]/(modulus) via extended Euclid.

    Raises ZeroDivisionError on the zero vector.
    """
    k = len(a)
    if not any(a):
        raise ZeroDivisionError("inverse of zero field element")
    if k == 1:
        return (pow(a[0] % p, -1, p),)
    r0, r1 = list(modulus), _poly_trim([x % p for x in a])
    s0, s1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        # s_next = s0 - q * s1
        prod = [0] * (len(q) + len(s1) - 1 if q and s1 else 0)
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] = (prod[i + j] + qi * sj) % p
        nxt = [0] * max(len(s0), len(prod))
        for i, c in enumerate(s0):
            nxt[i] = c
        for i, c in enumerate(prod):
            nxt[i] = (nxt[i] - c) % p
        s0, s1 = s1, _poly_trim(nxt)
    # r0 is the gcd, a nonzero constant since the modulus is irreducible
    c_inv = pow(r0[0], -1, p)
    out = [0] * k
    for i, c in enumerate(s0):
        out[i] = (c * c_inv) % p
    return tuple(out)
