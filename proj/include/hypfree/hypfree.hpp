#pragma once

// Everything at once.

#include "scalar.hpp"
#include "polynomial.hpp"
#include "matrix.hpp"
#include "modp.hpp"
#include "multimodular.hpp"
#include "arrangement.hpp"
#include "lattice.hpp"
#include "derivation.hpp"
#include "generators.hpp"
#include "freeness.hpp"
#include "bpoly.hpp"
#include "nt.hpp"
#include "spog.hpp"
#include "freepath.hpp"
#include "families.hpp"
#include "harness.hpp"
#include "io.hpp"
#include "certificate.hpp"
#include "cli.hpp"
