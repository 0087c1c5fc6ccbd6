# define global properties and configuration parameters
import os
from fractions import Fraction
from dotenv import load_dotenv
load_dotenv()


class Config:
    DEBUG = os.getenv('DEBUG', 'False').lower() in ('true', '1', 'yes')
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING').upper()

    # Arithmetic kernel
    SIEVE_LIMIT = int(os.getenv('SIEVE_LIMIT', str(10**8)))

    # Ideals and complexes
    MATERIALIZE_LIMIT = int(os.getenv('MATERIALIZE_LIMIT', str(10**6)))

    # Summation
    INCLUSION_EXCLUSION_MAX_FACETS = int(os.getenv('INCLUSION_EXCLUSION_MAX_FACETS', '20'))
    PSI_BRUTEFORCE_MAX_R = int(os.getenv('PSI_BRUTEFORCE_MAX_R', '5'))

    # Facets of [n]
    FACET_BLOCK_SIZE = int(os.getenv('FACET_BLOCK_SIZE', str(2**20)))
    HXS_EPSILON = Fraction(os.getenv('HXS_EPSILON', '1/100'))
    GAMMA_PRECISION = int(os.getenv('GAMMA_PRECISION', '40'))

    # Orders
    POSET_MAX_R = int(os.getenv('POSET_MAX_R', '16'))
    LINEAR_EXTENSION_MAX_ELEMENTS = int(os.getenv('LINEAR_EXTENSION_MAX_ELEMENTS', '24'))
    COHERENCE_MAX_VERTICES = int(os.getenv('COHERENCE_MAX_VERTICES', '12'))
    ORDER_ENUMERATION_LIMIT = int(os.getenv('ORDER_ENUMERATION_LIMIT', str(10**4)))
    ORDER_ENUMERATION_MAX_R = int(os.getenv('ORDER_ENUMERATION_MAX_R', '8'))
    TERMORDER_MAX_R = int(os.getenv('TERMORDER_MAX_R', '10'))

    # Workers for block-parallel streaming and order enumeration (--threads overrides)
    THREADS = max(1, int(os.getenv('THREADS', '1')))

    REPRO_SEED = int(os.getenv('REPRO_SEED', '20240229'))
