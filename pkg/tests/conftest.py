from shiftlab.groups import Zd
from shiftlab.shifts import Alphabet, FiniteConfig
from shiftlab import gluing as gl


BIN = Alphabet(("0", "1"))


def random_full_shift_designation(rng, pieces=4, span=30, collar=1):
    """Random designation with well-separated finite pieces; collar cells
    carry zero by construction."""
    z1 = Zd(1)
    ps = []
    cursor = -span
    for _ in range(rng.randint(1, pieces)):
        width = rng.randint(1, 3)
        pos = cursor + rng.randint(collar + 2, collar + 6)
        cells = {}
        for i in range(width):
            if rng.random() < 0.8:
                cells[(pos + i,)] = "1"
        cursor = pos + width
        region = gl.FiniteRegion(frozenset(
            (pos + i,) for i in range(-collar, width + collar)))
        cfg = FiniteConfig(z1, BIN, cells)
        ps.append(gl.DesignationPiece(region, cfg))
    ball = frozenset((i,) for i in range(-collar, collar + 1))
    return gl.Designation(ps, collar=ball)
