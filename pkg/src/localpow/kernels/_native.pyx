# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backend for the prime and scan kernels.

Same contract as pure.py; every public function returns exactly what the
pure one does.
"""

from libc.stdlib cimport calloc, free, malloc

BACKEND = "native"

ctypedef unsigned long long u64
ctypedef long long i64

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"


cdef inline u64 mulmod(u64 a, u64 b, u64 m) noexcept nogil:
    return <u64>((<u128>a * b) % m)


cdef u64 powmod(u64 b, u64 e, u64 m) noexcept nogil:
    cdef u64 r = 1 % m
    b %= m
    while e:
        if e & 1:
            r = mulmod(r, b, m)
        b = mulmod(b, b, m)
        e >>= 1
    return r


cdef u64 gcd_u64(u64 a, u64 b) noexcept nogil:
    cdef u64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef u64 invmod(u64 a, u64 m) noexcept nogil:
    # modular inverse assuming gcd(a, m) = 1, m >= 1
    cdef i64 old_r, r, old_s, s, q, t
    if m == 1:
        return 0
    old_r = <i64>m
    r = <i64>(a % m)
    old_s = 0
    s = 1
    while r:
        q = old_r / r
        t = old_r - q * r
        old_r = r
        r = t
        t = old_s - q * s
        old_s = s
        s = t
    if old_s < 0:
        old_s += <i64>m
    return <u64>old_s


cdef u64 _MR_W[12]
_MR_W[0] = 2; _MR_W[1] = 3; _MR_W[2] = 5; _MR_W[3] = 7
_MR_W[4] = 11; _MR_W[5] = 13; _MR_W[6] = 17; _MR_W[7] = 19
_MR_W[8] = 23; _MR_W[9] = 29; _MR_W[10] = 31; _MR_W[11] = 37

cdef u64 _SMALL_Q[15]
_SMALL_Q[0] = 2; _SMALL_Q[1] = 3; _SMALL_Q[2] = 5; _SMALL_Q[3] = 7
_SMALL_Q[4] = 11; _SMALL_Q[5] = 13; _SMALL_Q[6] = 17; _SMALL_Q[7] = 19
_SMALL_Q[8] = 23; _SMALL_Q[9] = 29; _SMALL_Q[10] = 31; _SMALL_Q[11] = 37
_SMALL_Q[12] = 41; _SMALL_Q[13] = 43; _SMALL_Q[14] = 47


cdef bint is_prime_u64(u64 n) noexcept nogil:
    cdef int i, r, s
    cdef u64 d, x, a
    cdef bint witness
    if n < 2:
        return False
    for i in range(12):
        if n % _MR_W[i] == 0:
            return n == _MR_W[i]
    d = n - 1
    s = 0
    while d % 2 == 0:
        d >>= 1
        s += 1
    for i in range(12):
        a = _MR_W[i]
        x = powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        witness = True
        for r in range(s - 1):
            x = mulmod(x, x, n)
            if x == n - 1:
                witness = False
                break
        if witness:
            return False
    return True


def is_prime(n):
    """Deterministic Miller-Rabin (capped at 64 bits in this backend)."""
    if n < 0:
        return False
    if n >> 63:
        raise OverflowError("native backend handles n < 2^63")
    return bool(is_prime_u64(<u64>n))


cdef u64 pollard_brent(u64 n) noexcept nogil:
    cdef u64 c, x, y, ys, q, g, m, r, k, i
    for c in range(1, 1000):
        y = 2; r = 1; q = 1; g = 1
        x = y; ys = y
        while g == 1:
            x = y
            for i in range(r):
                y = (mulmod(y, y, n) + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                m = 128 if r - k > 128 else r - k
                for i in range(m):
                    y = (mulmod(y, y, n) + c) % n
                    q = mulmod(q, x - y if x > y else y - x, n)
                g = gcd_u64(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (mulmod(ys, ys, n) + c) % n
                g = gcd_u64(x - ys if x > ys else ys - x, n)
        if g != n:
            return g
    return 0


cdef u64 upow(u64 b, int e) noexcept nogil:
    cdef u64 r = 1
    cdef int i
    for i in range(e):
        r *= b
    return r


cdef int factorize_u64(u64 n, u64* ps, u64* es) noexcept nogil:
    # fills sorted (prime, exponent) pairs, returns the count
    cdef int cnt = 0, i, j, merged
    cdef u64 p, d
    cdef u64 stack[64]
    cdef int top = 0
    cdef u64 tp, te
    if n % 2 == 0:
        ps[cnt] = 2; es[cnt] = 0
        while n % 2 == 0:
            n >>= 1
            es[cnt] += 1
        cnt += 1
    if n % 3 == 0:
        ps[cnt] = 3; es[cnt] = 0
        while n % 3 == 0:
            n /= 3
            es[cnt] += 1
        cnt += 1
    p = 5
    while p <= 10000 and p * p <= n:
        if n % p == 0:
            ps[cnt] = p; es[cnt] = 0
            while n % p == 0:
                n /= p
                es[cnt] += 1
            cnt += 1
        if n % (p + 2) == 0:
            ps[cnt] = p + 2; es[cnt] = 0
            while n % (p + 2) == 0:
                n /= p + 2
                es[cnt] += 1
            cnt += 1
        p += 6
    if n > 1:
        stack[top] = n; top += 1
        while top:
            top -= 1
            d = stack[top]
            if d == 1:
                continue
            if is_prime_u64(d):
                merged = 0
                for i in range(cnt):
                    if ps[i] == d:
                        es[i] += 1
                        merged = 1
                        break
                if not merged:
                    ps[cnt] = d; es[cnt] = 1
                    cnt += 1
                continue
            p = pollard_brent(d)
            stack[top] = p; top += 1
            stack[top] = d / p; top += 1
    for i in range(1, cnt):
        tp = ps[i]; te = es[i]
        j = i - 1
        while j >= 0 and ps[j] > tp:
            ps[j + 1] = ps[j]; es[j + 1] = es[j]
            j -= 1
        ps[j + 1] = tp; es[j + 1] = te
    return cnt


def factorize(n):
    """Prime factorization of n >= 1 as sorted (prime, exponent) pairs."""
    cdef u64 ps[64]
    cdef u64 es[64]
    cdef int cnt, i
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if n >> 63:
        raise OverflowError("native backend handles n < 2^63")
    cnt = factorize_u64(<u64>n, ps, es)
    return [(ps[i], <int>es[i]) for i in range(cnt)]


cdef u64 primitive_root_u64(u64 p) noexcept nogil:
    cdef u64 qs[64]
    cdef u64 es[64]
    cdef int cnt, i
    cdef u64 g
    cdef bint ok
    if p == 2:
        return 1
    cnt = factorize_u64(p - 1, qs, es)
    g = 2
    while True:
        ok = True
        for i in range(cnt):
            if powmod(g, (p - 1) / qs[i], p) == 1:
                ok = False
                break
        if ok:
            return g
        g += 1


def primitive_root(p):
    """Smallest primitive root mod the prime p."""
    return primitive_root_u64(<u64>p)


cdef u64 isqrt_u64(u64 n) noexcept nogil:
    cdef u64 r = 1, bit
    while r * r <= n:
        r <<= 1
    r >>= 1
    bit = r >> 1
    while bit:
        if (r + bit) * (r + bit) <= n:
            r += bit
        bit >>= 1
    return r


cdef struct HashTable:
    u64* keys
    i64* vals
    u64 mask


cdef bint ht_init(HashTable* t, u64 n) noexcept nogil:
    cdef u64 size = 4
    while size < 2 * n:
        size <<= 1
    t.keys = <u64*>calloc(size, sizeof(u64))  # 0 marks an empty slot
    t.vals = <i64*>malloc(size * sizeof(i64))
    t.mask = size - 1
    return t.keys != NULL and t.vals != NULL


cdef void ht_free(HashTable* t) noexcept nogil:
    free(t.keys)
    free(t.vals)


cdef inline void ht_put(HashTable* t, u64 key, i64 val) noexcept nogil:
    # keys are nonzero group elements; keep the first value per key
    cdef u64 idx = (key * <u64>0x9E3779B97F4A7C15) & t.mask
    while True:
        if t.keys[idx] == 0:
            t.keys[idx] = key
            t.vals[idx] = val
            return
        if t.keys[idx] == key:
            return
        idx = (idx + 1) & t.mask


cdef inline i64 ht_get(HashTable* t, u64 key) noexcept nogil:
    cdef u64 idx = (key * <u64>0x9E3779B97F4A7C15) & t.mask
    while True:
        if t.keys[idx] == 0:
            return -1
        if t.keys[idx] == key:
            return t.vals[idx]
        idx = (idx + 1) & t.mask


cdef i64 bsgs(u64 base, u64 target, u64 order, u64 p) noexcept nogil:
    # discrete log in <base> of the given order; -1 if absent, -2 on alloc failure
    cdef u64 m = isqrt_u64(order - 1) + 1
    cdef HashTable t
    cdef u64 cur, step, i
    cdef i64 j
    if not ht_init(&t, m):
        ht_free(&t)
        return -2
    cur = 1
    for i in range(m):
        ht_put(&t, cur, <i64>i)
        cur = mulmod(cur, base, p)
    step = invmod(powmod(base, m, p), p)
    cur = target
    for i in range(m):
        j = ht_get(&t, cur)
        if j >= 0:
            ht_free(&t)
            return <i64>((i * m + <u64>j) % order)
        cur = mulmod(cur, step, p)
    ht_free(&t)
    return -1


cdef i64 prime_power_log(u64 gq, u64 hq, u64 q, int e, u64 p) noexcept nogil:
    # digit-by-digit lift; gq has order exactly q^e
    cdef u64 gamma = powmod(gq, upow(q, e - 1), p)
    cdef u64 x = 0, expo, target
    cdef i64 d
    cdef int i
    for i in range(e):
        expo = upow(q, e - 1 - i)
        target = powmod(mulmod(invmod(powmod(gq, x, p), p), hq, p), expo, p)
        d = bsgs(gamma, target, q, p)
        if d < 0:
            return d
        x += <u64>d * upow(q, i)
    return <i64>x


cdef i64 discrete_log_u64(u64 g, u64 h, u64 p) noexcept nogil:
    # smallest x >= 0 with g^x = h mod p; -1 if none, -2 on alloc failure
    cdef u64 qs[64]
    cdef u64 es[64]
    cdef int cnt, i, t
    cdef u64 q, qt, gq, hq, x, mod, d, dd, r
    cdef i64 xi
    g %= p
    h %= p
    if g == 0 or h == 0:
        return -1
    cnt = factorize_u64(p - 1, qs, es)
    # d = exact multiplicative order of g, peeled off p-1 prime by prime
    d = p - 1
    for i in range(cnt):
        q = qs[i]
        while d % q == 0 and powmod(g, d / q, p) == 1:
            d /= q
    if powmod(h, d, p) != 1:
        return -1
    if h == 1:
        return 0
    x = 0
    mod = 1
    for i in range(cnt):
        q = qs[i]
        t = 0
        dd = d
        while dd % q == 0:
            dd /= q
            t += 1
        if t == 0:
            continue
        qt = upow(q, t)
        gq = powmod(g, d / qt, p)  # order exactly q^t
        hq = powmod(h, d / qt, p)
        xi = prime_power_log(gq, hq, q, t, p)
        if xi < 0:
            return xi
        r = (<u64>xi + qt - x % qt) % qt
        x += mod * mulmod(r, invmod(mod % qt, qt), qt)
        mod *= qt
    return <i64>x


def discrete_log(g, h, p):
    """Smallest x >= 0 with g^x ≡ h (mod p), via Pohlig-Hellman + BSGS."""
    cdef i64 x = discrete_log_u64(<u64>(g % p), <u64>(h % p), <u64>p)
    if x == -2:
        raise MemoryError("baby-step table allocation failed")
    if x < 0:
        raise ValueError("element outside the subgroup generated by the base")
    return <object>x


# -- sieving -----------------------------------------------------------------

cdef unsigned char* _sieve_flags(u64 limit) noexcept nogil:
    cdef unsigned char* flags = <unsigned char*>malloc(limit + 1)
    cdef u64 i, j
    if flags == NULL:
        return NULL
    for i in range(limit + 1):
        flags[i] = 1
    flags[0] = 0
    if limit >= 1:
        flags[1] = 0
    i = 2
    while i * i <= limit:
        if flags[i]:
            j = i * i
            while j <= limit:
                flags[j] = 0
                j += i
        i += 1
    return flags


def sieve(limit):
    """All primes <= limit, ascending."""
    cdef u64 lim, i
    cdef unsigned char* flags
    cdef list out = []
    if limit < 2:
        return []
    lim = <u64>limit
    flags = _sieve_flags(lim)
    if flags == NULL:
        raise MemoryError("sieve allocation failed")
    try:
        for i in range(2, lim + 1):
            if flags[i]:
                out.append(i)
    finally:
        free(flags)
    return out


def count_primes(limit):
    """Number of primes <= limit."""
    cdef u64 lim, i, cnt = 0
    cdef unsigned char* flags
    if limit < 2:
        return 0
    lim = <u64>limit
    flags = _sieve_flags(lim)
    if flags == NULL:
        raise MemoryError("sieve allocation failed")
    with nogil:
        for i in range(2, lim + 1):
            cnt += flags[i]
    free(flags)
    return cnt


# -- exponent systems ----------------------------------------------------------

cdef int solve_system_u64(u64* a, u64* b, int width, u64 m, u64* out) noexcept nogil:
    # smallest k with k*a_j ≡ b_j (mod m) for all j; 1 on success, 0 if none
    cdef u64 r = 0, mod = 1
    cdef u64 aj, bj, g, mj, rj, gg, lcm, step, t
    cdef int j
    for j in range(width):
        aj = a[j] % m
        bj = b[j] % m
        g = gcd_u64(aj, m)
        if g == 0:
            g = m
        if bj % g:
            return 0
        mj = m / g
        if mj > 1:
            rj = mulmod(bj / g, invmod(aj / g, mj), mj)
        else:
            rj = 0
        gg = gcd_u64(mod, mj)
        lcm = (mod / gg) * mj
        if (rj + lcm - r) % gg:
            return 0
        step = mj / gg
        if step > 1:
            t = mulmod(((rj + lcm - r) / gg) % step, invmod((mod / gg) % step, step), step)
        else:
            t = 0
        r = (r + mod * t) % lcm
        mod = lcm
    out[0] = r
    return 1


def solve_exponent_system(a, b, m):
    """Smallest k in [0, m) with k*a_j ≡ b_j (mod m) for all j, else None."""
    cdef int width = len(a)
    cdef u64 ca[64]
    cdef u64 cb[64]
    cdef u64 res = 0
    cdef int j
    if width > 64:
        raise ValueError("system too wide for the native backend")
    for j in range(width):
        ca[j] = <u64>(a[j] % m)
        cb[j] = <u64>(b[j] % m)
    if solve_system_u64(ca, cb, width, <u64>m, &res):
        return <object>res
    return None


# -- scan kernels ----------------------------------------------------------------

def z_b_rows(primes, ell, nums, dens):
    """Per-prime ell-th power classes z_j = c_j^((p-1)/ell) and their logs.

    Same contract as the pure backend: rows are (p, zs, bs), with None pairs
    for primes dividing a numerator or denominator.
    """
    cdef int width = len(nums)
    cdef u64 cl = <u64>ell
    cdef u64 p, m, a, w, r, cur, z
    cdef int j, k
    cdef bint ok, allone
    cdef i64 cn[16]
    cdef u64 cd[16]
    cdef u64 zs[16]
    cdef u64 bs[16]
    cdef list zl, bl
    if width > 16:
        raise ValueError("tuple too wide for the native backend")
    for j in range(width):
        cn[j] = <i64>nums[j]
        cd[j] = <u64>dens[j]
    out = []
    for pobj in primes:
        p = <u64>pobj
        ok = True
        for j in range(width):
            if cn[j] % <i64>p == 0 or cd[j] % p == 0:
                ok = False
                break
        if not ok:
            out.append((pobj, None, None))
            continue
        m = (p - 1) / cl
        allone = True
        for j in range(width):
            r = <u64>((cn[j] % <i64>p + <i64>p) % <i64>p)
            r = mulmod(r, invmod(cd[j] % p, p), p)
            z = powmod(r, m, p)
            zs[j] = z
            if z != 1:
                allone = False
        zl = [zs[j] for j in range(width)]
        if allone:
            out.append((pobj, tuple(zl), (0,) * width))
            continue
        a = 2
        w = powmod(a, m, p)
        while w == 1:
            a += 1
            w = powmod(a, m, p)
        for j in range(width):
            cur = 1
            k = 0
            while cur != zs[j]:
                cur = mulmod(cur, w, p)
                k += 1
                if k >= <int>cl:
                    raise ArithmeticError("value outside mu_ell")
            bs[j] = <u64>k
        bl = [<int>bs[j] for j in range(width)]
        out.append((pobj, tuple(zl), tuple(bl)))
    return out


cdef bint projection_solvable(u64* us, u64* vs, int width, u64 q, u64 p) noexcept nogil:
    # is there t mod q with u_j^t == v_j for all j?  (all u_j have order 1 or q)
    cdef int piv = -1, j
    cdef u64 u, v, w, t
    cdef bint found
    for j in range(width):
        if us[j] != 1:
            piv = j
            break
    if piv < 0:
        for j in range(width):
            if vs[j] != 1:
                return False
        return True
    u = us[piv]
    v = vs[piv]
    w = 1
    found = False
    t = 0
    while t < q:
        if w == v:
            found = True
            break
        w = mulmod(w, u, p)
        t += 1
    if not found:
        return False
    for j in range(width):
        if powmod(us[j], t, p) != vs[j]:
            return False
    return True


def omega_members(primes, ns, fnums, fdens):
    """Count primes where (f(n_j)) is a simultaneous power of (n_j) mod p.

    Same contract as the pure backend: returns (counted, skipped, members).
    """
    cdef int width = len(ns)
    cdef u64 counted = 0, skipped = 0, members = 0
    cdef i64 cfn[16]
    cdef u64 cn[16]
    cdef u64 cfd[16]
    cdef u64 avals[16]
    cdef u64 bvals[16]
    cdef u64 us[16]
    cdef u64 vs[16]
    cdef u64 alphas[16]
    cdef u64 betas[16]
    cdef u64 p, n1, rem, q, e, g, kres
    cdef int j, qi
    cdef bint ok, rejected
    cdef i64 dl
    if width > 16:
        raise ValueError("tuple too wide for the native backend")
    for j in range(width):
        cn[j] = <u64>ns[j]
        cfn[j] = <i64>fnums[j]
        cfd[j] = <u64>fdens[j]
    for pobj in primes:
        p = <u64>pobj
        ok = True
        for j in range(width):
            if cn[j] % p == 0 or cfn[j] % <i64>p == 0 or cfd[j] % p == 0:
                ok = False
                break
        if not ok:
            skipped += 1
            continue
        counted += 1
        for j in range(width):
            avals[j] = cn[j] % p
            bvals[j] = mulmod(
                <u64>((cfn[j] % <i64>p + <i64>p) % <i64>p), invmod(cfd[j] % p, p), p
            )
        n1 = p - 1
        rem = n1
        rejected = False
        for qi in range(15):
            q = _SMALL_Q[qi]
            if rem % q:
                continue
            while rem % q == 0:
                rem /= q
            e = n1 / q
            for j in range(width):
                us[j] = powmod(avals[j], e, p)
                vs[j] = powmod(bvals[j], e, p)
            if not projection_solvable(us, vs, width, q, p):
                rejected = True
                break
        if rejected:
            continue
        g = primitive_root_u64(p)
        ok = True
        for j in range(width):
            dl = discrete_log_u64(g, avals[j], p)
            if dl == -2:
                raise MemoryError("baby-step table allocation failed")
            if dl < 0:
                ok = False
                break
            alphas[j] = <u64>dl
            dl = discrete_log_u64(g, bvals[j], p)
            if dl == -2:
                raise MemoryError("baby-step table allocation failed")
            if dl < 0:
                ok = False
                break
            betas[j] = <u64>dl
        if ok and solve_system_u64(alphas, betas, width, n1, &kres):
            members += 1
    return counted, skipped, members
