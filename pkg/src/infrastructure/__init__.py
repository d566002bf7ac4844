# path: src/infrastructure/__init__.py
# description: Infrastructure Layer Package Marker v1.0.
#
# ARCHITECTURAL ROLE (Hexagonal/DDD):
# Concrete adapters for the domain ports.
#
# CONTENTS:
# - Exact engines: validator, analyzer, dirichlet, integerizer, oracle.
# - Constructive families: generators.
# - I/O adapters: serialization (pydantic JSON schema), svg_renderer, cli.
# - Configuration: settings (TILING_* environment variables).
