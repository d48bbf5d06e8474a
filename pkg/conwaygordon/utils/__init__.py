# Exact geometry, file formats and environment configuration
