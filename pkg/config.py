import os
from dotenv import load_dotenv

load_dotenv()  # Load environment variables

class Config:
    # Engine limits
    STEP_BUDGET = int(os.getenv('PEG_STEP_BUDGET', '10000000'))

    # Matching recurses once per expression level; runs get their own thread
    RECURSION_LIMIT = int(os.getenv('PEG_RECURSION_LIMIT', '100000'))
    STACK_MB = int(os.getenv('PEG_STACK_MB', '512'))

    # Diagnostics: 'latest-first' or 'recorded'
    EXPECTED_ORDER = os.getenv('PEG_EXPECTED_ORDER', 'latest-first')

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
    LOG_DIR = os.getenv('LOG_DIR')  # file + JSON handlers only when set
