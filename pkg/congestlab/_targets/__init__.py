from . import c4, c5, clique


available_targets = {mod.Target.name: mod.Target for mod in (clique, c4, c5)}
