"""Small independent oracles shared by the tests."""

from itertools import product

# filled by the acceptance suite, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def classes_by_union_find(G, gamma):
    """Classes of G x G under (g1,h1) ~ (g2,h2) iff (g2^-1 g1, h2 h1^-1) in gamma."""
    n = G.order
    parent = list(range(n * n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g1, h1, g2, h2 in product(range(n), repeat=4):
        if (G.mul[G.inv[g2]][g1], G.mul[h2][G.inv[h1]]) in gamma:
            a, b = find(g1 * n + h1), find(g2 * n + h2)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(n * n)})


def perm_order(p):
    k, q = 1, p
    ident = tuple(range(len(p)))
    while q != ident:
        q = tuple(p[i] for i in q)
        k += 1
    return k
