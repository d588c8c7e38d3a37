# Copyright (c) 2026 The ctslab developers

# This file is part of ctslab which is distributed under the
# MIT License.

from .cli import main

if __name__ == "__main__":  # pragma: no cover
    main()
