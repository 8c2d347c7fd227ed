# shifts package — 2-variable weighted shifts, their transforms, powers,
# Berger measures and moment matrices
