# SPDX-License-Identifier: Apache-2.0
import os
import pathlib
import shutil

import pytest

SOURCE_DIR = pathlib.Path(os.environ.get("IRSBIM_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def source_dir():
    return SOURCE_DIR


@pytest.fixture(scope="session")
def cli():
    exe = os.environ.get("IRSBIM_CLI") or shutil.which("irsbim")
    if not exe:
        pytest.skip("irsbim CLI not available")
    return exe
