from ._cycle import CycleTarget


class Target(CycleTarget):
    """4-cycles; reported by a node opposite a sink."""

    name = "c4"
    length = 4

    def designated(self, copy, points):
        order = self.cyclic_order(copy)
        found = set()
        for i, s in enumerate(order):
            before, after = order[i - 1], order[(i + 1) % 4]
            if points(before, s) and points(after, s):
                found.add(order[(i + 2) % 4])
        return found
