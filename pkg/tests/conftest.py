"""Shared pytest configuration."""

import loglap.geometry

# TestFunctionSpec is a production dataclass whose Test* name trips the
# collector when imported into a test module; mark it as not-a-test.
loglap.geometry.TestFunctionSpec.__test__ = False
