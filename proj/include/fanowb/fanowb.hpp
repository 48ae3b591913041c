#pragma once

#include "fanowb/bounds.hpp"
#include "fanowb/curves.hpp"
#include "fanowb/errors.hpp"
#include "fanowb/expansion.hpp"
#include "fanowb/fano.hpp"
#include "fanowb/form.hpp"
#include "fanowb/hypersurface.hpp"
#include "fanowb/io.hpp"
#include "fanowb/matrix.hpp"
#include "fanowb/parallel.hpp"
#include "fanowb/projective.hpp"
#include "fanowb/random.hpp"
#include "fanowb/scalar.hpp"
#include "fanowb/unirational.hpp"
