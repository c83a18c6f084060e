#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from .events import Events
from .fcollection import FCollection
