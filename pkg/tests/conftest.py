import os
import tempfile


def pytest_configure(config):
    # keep solver caches out of the home directory
    os.environ["GRTKV_CACHE_DIR"] = tempfile.mkdtemp(prefix="grtkv-cache-")
