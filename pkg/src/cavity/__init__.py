# Copyright (c) 2017 Aimirim STI.
