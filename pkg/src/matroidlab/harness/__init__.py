"""Census harness: catalogs, brute-force oracles, bound checks, CLI."""
