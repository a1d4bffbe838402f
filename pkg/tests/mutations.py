"""Seeded single-field mutations of certificate documents."""

import copy
import random


def leaves(doc, path=()):
    if isinstance(doc, dict):
        for k in sorted(doc):
            yield from leaves(doc[k], path + (k,))
    elif isinstance(doc, list) and doc:
        yield path, doc  # the list itself can be mutated
        for i, x in enumerate(doc):
            yield from leaves(x, path + (i,))
    else:
        yield path, doc


def _set(doc, path, value):
    for k in path[:-1]:
        doc = doc[k]
    doc[path[-1]] = value


def _mutate_value(value, rng):
    if isinstance(value, bool):
        return not value
    if value is None:
        return rng.choice([0, 1, "0"])
    if isinstance(value, int):
        return value + rng.choice([-2, -1, 1, 2, 7])
    if isinstance(value, str):
        if value.lstrip("-").isdigit():
            return str(int(value) + rng.choice([-2, -1, 1, 2, 30]))
        if len(value) >= 2 and value[0].isalpha() and value[1:].isdigit():
            # a type label such as "A4"
            return value[0] + str(int(value[1:]) + rng.choice([-1, 1]))
        return value + "x"
    if isinstance(value, list):
        if len(value) > 1 and rng.random() < 0.5:
            out = list(value)
            i = rng.randrange(len(out))
            out[i], out[-1 - i] = out[-1 - i], out[i]
            if out == value:
                out = out[:-1]
            return out
        return value[:-1] if rng.random() < 0.5 else value + [copy.deepcopy(value[-1])]
    raise TypeError(type(value))


def is_family_swap(path, old, new) -> bool:
    """B_n and C_n have equal orders; relabelling one as the other is not a forgery."""
    return path[-1:] == ("family",) and {old, new} == {"B", "C"}


def mutate(doc, rng: random.Random):
    """One mutated copy of doc and a description of the change."""
    while True:
        path, value = rng.choice(list(leaves(doc)))
        new = _mutate_value(value, rng)
        if new == value or is_family_swap(path, value, new):
            continue
        out = copy.deepcopy(doc)
        _set(out, path, new)
        return out, f"{'/'.join(map(str, path))}: {value!r} -> {new!r}"
