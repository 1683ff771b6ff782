"""Simple graphs on subsets of [n], stored as edge bitmasks.

The edge {i, j} with i < j occupies bit j*(j-1)/2 + i, which depends only on
the two labels, so the same encoding serves every ambient degree and every
vertex subset.
"""

from .setcomb import (
    MAX_DEGREE,
    mask_labels,
    partition_sort,
    partitions_of,
    submasks,
)

_MAX_VERTS = 11  # keeps the full edge mask inside one machine word


def edge_index(i, j):
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


_EDGE_VERTS = tuple(
    (i, j) for j in range(_MAX_VERTS) for i in range(j)
)


def edge_vertices(idx):
    return _EDGE_VERTS[idx]


def edge_list(gmask):
    out = []
    while gmask:
        low = gmask & -gmask
        out.append(_EDGE_VERTS[low.bit_length() - 1])
        gmask ^= low
    return out


def edges_from_pairs(pairs):
    g = 0
    for i, j in pairs:
        g |= 1 << edge_index(i, j)
    return g


def all_edges_mask(vmask):
    """Edge mask of the complete graph on the vertex set."""
    labels = mask_labels(vmask)
    g = 0
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            g |= 1 << edge_index(labels[a], labels[b])
    return g


def edges_between(smask, tmask):
    g = 0
    for i in mask_labels(smask):
        for j in mask_labels(tmask):
            g |= 1 << edge_index(i, j)
    return g


def graph_restrict(g, vmask):
    return g & all_edges_mask(vmask)


def graph_permute(g, perm):
    out = 0
    for i, j in edge_list(g):
        out |= 1 << edge_index(perm[i], perm[j])
    return out


def graph_complement(g, vmask):
    return all_edges_mask(vmask) & ~g


def components(g, vmask):
    """Partition of the vertex set into connected components."""
    adj = {i: 0 for i in mask_labels(vmask)}
    for i, j in edge_list(g & all_edges_mask(vmask)):
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    remaining = vmask
    blocks = []
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            nbrs = adj[bit.bit_length() - 1] & remaining & ~comp
            comp |= nbrs
            frontier |= nbrs
        blocks.append(comp)
        remaining &= ~comp
    return partition_sort(blocks)


def is_connected(g, vmask):
    return len(components(g, vmask)) <= 1


def component_count(g, vmask):
    return len(components(g, vmask))


def restrict_to_partition(g, x):
    """g|_X: keep only edges inside blocks of the partition."""
    out = 0
    for b in x:
        out |= graph_restrict(g, b)
    return out


def contract(g, x):
    """g/_X: the graph on the blocks of X (relabeled 0..len(X)-1) with an
    edge between two blocks whenever g joins them; loops and multiplicities
    vanish in the edge-mask encoding."""
    blocks = list(x)
    out = 0
    for a in range(len(blocks)):
        for b in range(a + 1, len(blocks)):
            if g & edges_between(blocks[a], blocks[b]):
                out |= 1 << edge_index(a, b)
    return out


def contraction_lattice(g, vmask):
    """Partitions of the vertex set whose blocks induce connected subgraphs."""
    return tuple(x for x in partitions_of(vmask)
                 if all(is_connected(graph_restrict(g, b), b) for b in x))


def acyclic_orientations(g, vmask):
    """Count acyclic orientations by brute force over all edge orientations."""
    edges = edge_list(g & all_edges_mask(vmask))
    m = len(edges)
    verts = mask_labels(vmask)
    count = 0
    for bits in range(1 << m):
        adj = {v: [] for v in verts}
        for t, (i, j) in enumerate(edges):
            if (bits >> t) & 1:
                adj[i].append(j)
            else:
                adj[j].append(i)
        if _is_dag(adj, verts):
            count += 1
    return count


def _is_dag(adj, verts):
    state = {v: 0 for v in verts}  # 0 unseen, 1 on stack, 2 done
    for root in verts:
        if state[root]:
            continue
        stack = [(root, iter(adj[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if state[w] == 1:
                    return False
                if state[w] == 0:
                    state[w] = 1
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                state[v] = 2
                stack.pop()
    return True


def complete_on_partition(x):
    """k_X: the disjoint union of complete graphs on the blocks of X."""
    g = 0
    for b in x:
        g |= all_edges_mask(b)
    return g


def graphs_on(vmask):
    """All graphs on the vertex set, as ascending edge masks."""
    return submasks(all_edges_mask(vmask))


def encode_graph(g, n):
    edges = sorted(edge_list(g))
    body = ",".join("e%x%x" % (i, j) for i, j in edges)
    return f"{n}:{body}"


def decode_graph(s):
    head, _, body = s.partition(":")
    n = int(head)
    g = 0
    if body:
        for part in body.split(","):
            if not (part.startswith("e") and len(part) == 3):
                raise ValueError(f"bad edge token {part!r}")
            g |= 1 << edge_index(int(part[1], 16), int(part[2], 16))
    return g, n


class SimpleGraph:
    """Loopless simple graph on [n]; immutable."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges):
        if not 0 <= n <= min(MAX_DEGREE, _MAX_VERTS):
            raise ValueError(f"graph degree out of range: {n}")
        if isinstance(edges, int):
            mask = edges
        else:
            mask = edges_from_pairs(edges)
        if mask & ~all_edges_mask((1 << n) - 1):
            raise ValueError("edge outside the vertex set")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", mask)

    def __setattr__(self, *args):
        raise AttributeError("SimpleGraph is immutable")

    def __eq__(self, other):
        return isinstance(other, SimpleGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"SimpleGraph({encode_graph(self.edges, self.n)!r})"

    @classmethod
    def decode(cls, s):
        g, n = decode_graph(s)
        return cls(n, g)

    def encode(self):
        return encode_graph(self.edges, self.n)

    def edge_pairs(self):
        return edge_list(self.edges)

    def restrict(self, vmask):
        return SimpleGraph(self.n, graph_restrict(self.edges, vmask))

    def union(self, other):
        if self.n != other.n:
            raise ValueError("degrees differ")
        return SimpleGraph(self.n, self.edges | other.edges)

    def components(self):
        return components(self.edges, (1 << self.n) - 1)

    def acyclic_orientations(self):
        return acyclic_orientations(self.edges, (1 << self.n) - 1)

    def contraction_lattice(self):
        return contraction_lattice(self.edges, (1 << self.n) - 1)


def max_edge_degree():
    return _MAX_VERTS
