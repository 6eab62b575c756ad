"""DOT export: Hasse diagrams for lattices, specialization preorders for
spaces.  Node order follows the canonical element order."""



def _quote(s):
    return '"' + s.replace('"', '\\"') + '"'


def lattice_dot(lat, name="L"):
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(lat.n):
        lines.append(f"  n{i} [label={_quote(lat.label(i))}];")
    for i, j in lat.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def space_dot(space, name="S"):
    """Arrows x -> y for x in the closure of y, reduced to covers.

    Mutually specialising pairs (non-T0 spaces) keep both arrows.
    """
    n = space.n
    leq = [[space.specialization_leq(x, y) for y in range(n)] for x in range(n)]
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(n):
        lines.append(f"  p{i} [label={_quote(space.label(i))}];")
    for x in range(n):
        for y in range(n):
            if x == y or not leq[x][y]:
                continue
            strictly_between = any(
                z not in (x, y) and leq[x][z] and leq[z][y]
                and not (leq[z][x] and leq[y][z])
                for z in range(n))
            if not strictly_between:
                lines.append(f"  p{x} -> p{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"
