from ._cycle import CycleTarget


class Target(CycleTarget):
    """5-cycles; needs the length-2 out-paths of the neighbours."""

    name = "c5"
    length = 5
    needs_paths = True

    def designated(self, copy, points):
        # v with cycle order v, u, x, y, w and u -> x -> y <- w
        found = set()
        for v, u, x, y, w in self.orders(copy):
            if points(u, x) and points(x, y) and points(w, y):
                found.add(v)
        return found
