# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tour construction kernel; mirrors ``_pykernel.construct_tour``."""
import numpy as np

cimport numpy as cnp
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.stdlib cimport free as c_free, malloc, realloc
from libc.string cimport memset
from numpy.random cimport bitgen_t

cnp.import_array()


cdef inline Py_ssize_t _step(Py_ssize_t k, int d, Py_ssize_t rows, Py_ssize_t cols) noexcept nogil:
    if d == 0:
        return k - cols if k >= cols else -1
    if d == 1:
        return k + cols if k + cols < rows * cols else -1
    if d == 2:
        return k - 1 if k % cols else -1
    return k + 1 if (k + 1) % cols else -1


cdef struct Buf:
    int* data
    Py_ssize_t size
    Py_ssize_t cap


cdef inline int _push(Buf* b, int v) noexcept nogil:
    cdef int* grown
    if b.size == b.cap:
        grown = <int*>realloc(b.data, 2 * b.cap * sizeof(int))
        if grown == NULL:
            return -1
        b.data = grown
        b.cap *= 2
    b.data[b.size] = v
    b.size += 1
    return 0


cdef Py_ssize_t _escape(const unsigned char[::1] free, Py_ssize_t rows, Py_ssize_t cols,
                        unsigned char* visited, Py_ssize_t cur,
                        int* queue, int* parent, int* dist, int* mark, int stamp,
                        int* path) noexcept nogil:
    """Writes the escape path into ``path`` (excluding cur); returns its length."""
    cdef Py_ssize_t head = 0, tail = 0, c, nb, best = -1, key, best_key = -1, n = 0, i
    cdef int best_dist = -1, d, tmp
    queue[tail] = <int>cur
    tail += 1
    mark[cur] = stamp
    dist[cur] = 0
    parent[cur] = -1
    while head < tail:
        c = queue[head]
        head += 1
        if best_dist >= 0 and dist[c] >= best_dist:
            break
        for d in range(4):
            nb = _step(c, d, rows, cols)
            if nb < 0 or not free[nb] or mark[nb] == stamp:
                continue
            mark[nb] = stamp
            parent[nb] = <int>c
            dist[nb] = dist[c] + 1
            queue[tail] = <int>nb
            tail += 1
            if not visited[nb]:
                key = (nb % cols) * rows + nb // cols
                if best_dist < 0:
                    best_dist = dist[nb]
                    best = nb
                    best_key = key
                elif key < best_key:
                    best = nb
                    best_key = key
    if best < 0:
        return 0
    c = best
    while c != cur:
        path[n] = <int>c
        n += 1
        c = parent[c]
    for i in range(n // 2):
        tmp = path[i]
        path[i] = path[n - 1 - i]
        path[n - 1 - i] = tmp
    return n


def construct_tour(const unsigned char[::1] free, Py_ssize_t rows, Py_ssize_t cols,
                   double[::1] tau, Py_ssize_t start, int velocity,
                   const double[::1] eta_pow, double q0, double alpha, double tau0,
                   rng, Py_ssize_t target, bint stop_visited=True):
    cdef Py_ssize_t n = rows * cols
    cdef bitgen_t* bg
    cdef object capsule = rng.bit_generator.capsule
    bg = <bitgen_t*>PyCapsule_GetPointer(capsule, "BitGenerator")

    cdef unsigned char* visited = <unsigned char*>malloc(n)
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int* parent = <int*>malloc(n * sizeof(int))
    cdef int* dist = <int*>malloc(n * sizeof(int))
    cdef int* mark = <int*>malloc(n * sizeof(int))
    cdef int* path = <int*>malloc(n * sizeof(int))
    cdef Buf tour
    tour.cap = n + 16
    tour.size = 0
    tour.data = <int*>malloc(tour.cap * sizeof(int))
    if (visited == NULL or queue == NULL or parent == NULL or dist == NULL
            or mark == NULL or path == NULL or tour.data == NULL):
        c_free(visited); c_free(queue); c_free(parent); c_free(dist)
        c_free(mark); c_free(path); c_free(tour.data)
        raise MemoryError()

    cdef int cand_d[4]
    cdef int cand_e[4]
    cdef double cand_w[4]
    cdef int nc, d, e, best_i, i, stamp = 0, failed = 0
    cdef Py_ssize_t cur = start, c, nb, s, count = 1, plen, diff
    cdef double q, r, total, acc, keep = 1.0 - alpha, pull = alpha * tau0
    cdef bint update = alpha != 0.0

    memset(visited, 0, n)
    memset(mark, 0, n * sizeof(int))
    visited[start] = 1
    _push(&tour, <int>start)

    with rng.bit_generator.lock:
      with nogil:
        while count < target:
            nc = 0
            for d in range(4):
                c = cur
                e = 0
                while e < velocity:
                    nb = _step(c, d, rows, cols)
                    if nb < 0 or not free[nb] or (stop_visited and visited[nb]):
                        break
                    c = nb
                    e += 1
                if e and not visited[c]:
                    cand_d[nc] = d
                    cand_e[nc] = e
                    cand_w[nc] = tau[4 * cur + d] * eta_pow[e]
                    nc += 1
            if nc:
                q = bg.next_double(bg.state)
                best_i = 0
                if q <= q0:
                    for i in range(1, nc):
                        if cand_w[i] > cand_w[best_i]:
                            best_i = i
                else:
                    total = 0.0
                    for i in range(nc):
                        total += cand_w[i]
                    r = bg.next_double(bg.state) * total
                    acc = 0.0
                    best_i = nc - 1
                    for i in range(nc):
                        acc += cand_w[i]
                        if r < acc:
                            best_i = i
                            break
                d = cand_d[best_i]
                for i in range(cand_e[best_i]):
                    s = 4 * cur + d
                    if update:
                        tau[s] = keep * tau[s] + pull
                    cur = _step(cur, d, rows, cols)
                    if not visited[cur]:
                        visited[cur] = 1
                        count += 1
                    if _push(&tour, <int>cur):
                        failed = 1
                        break
            else:
                stamp += 1
                plen = _escape(free, rows, cols, visited, cur, queue, parent, dist, mark, stamp, path)
                if plen == 0:
                    break
                for i in range(plen):
                    nb = path[i]
                    diff = nb - cur
                    if diff == -cols:
                        d = 0
                    elif diff == cols:
                        d = 1
                    elif diff == -1:
                        d = 2
                    else:
                        d = 3
                    s = 4 * cur + d
                    if update:
                        tau[s] = keep * tau[s] + pull
                    cur = nb
                    if not visited[cur]:
                        visited[cur] = 1
                        count += 1
                    if _push(&tour, <int>cur):
                        failed = 1
                        break
            if failed:
                break

    out = np.empty(tour.size, dtype=np.int32)
    cdef int[::1] view = out
    for i in range(tour.size):
        view[i] = tour.data[i]
    c_free(visited); c_free(queue); c_free(parent); c_free(dist)
    c_free(mark); c_free(path); c_free(tour.data)
    if failed:
        raise MemoryError("tour buffer allocation failed")
    return out
