"""
Shared fixtures. When cg_lab is not installed, the flat source tree (whose
root directory is the package) is registered as cg_lab so the tests run
from a checkout.
"""

import importlib.util
import sys
from pathlib import Path

import numpy as np
import pytest

package_name = "cg_lab"
package_dir = Path(__file__).parent.parent

try:
    import cg_lab  # noqa: F401
except ImportError:
    spec = importlib.util.spec_from_file_location(
        package_name,
        package_dir / "__init__.py",
        submodule_search_locations=[str(package_dir)],
    )
    pkg = importlib.util.module_from_spec(spec)
    sys.modules[package_name] = pkg
    spec.loader.exec_module(pkg)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def sphere():
    from cg_lab.geometry.space_forms import SpaceForm

    return SpaceForm(2, 1.0)


@pytest.fixture
def flat_plane():
    from cg_lab.geometry.space_forms import SpaceForm

    return SpaceForm(2, 0.0)
