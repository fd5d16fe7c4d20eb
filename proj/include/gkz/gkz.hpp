#pragma once

#include "gkz/errors.hpp"
#include "gkz/rational.hpp"
#include "gkz/lattice.hpp"
#include "gkz/sparse_poly.hpp"
#include "gkz/laurent.hpp"
#include "gkz/weyl.hpp"
#include "gkz/linalg.hpp"
#include "gkz/derham.hpp"
#include "gkz/hypersurface.hpp"
#include "gkz/modp.hpp"
#include "gkz/json_io.hpp"
#include "gkz/orchestrator.hpp"
