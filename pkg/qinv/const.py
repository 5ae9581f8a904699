WORD_BITS = 64
# 1024 coordinates is genus 512
MAX_AMBIENT_DIM = 1024

ORACLE_MAX_DIM = 4
ORACLE_CHUNK_SIZE = 4096

DEFAULT_SEED = 20260
DEFAULT_ORTHOGONAL_FACTORS = 4
