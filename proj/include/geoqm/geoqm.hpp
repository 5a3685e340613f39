// Copyright 2026 The geoqm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "geoqm/common.hpp"
#include "geoqm/hermitian.hpp"
#include "geoqm/kaehler.hpp"
#include "geoqm/dual_tensors.hpp"
#include "geoqm/projective.hpp"
#include "geoqm/density.hpp"
#include "geoqm/io.hpp"
