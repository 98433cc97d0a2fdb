#pragma once

// Umbrella header.

#include "delpezzo/errors.hpp"
#include "delpezzo/rational.hpp"
#include "delpezzo/qmatrix.hpp"
#include "delpezzo/plane_poly.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/enumeration.hpp"
#include "delpezzo/weyl.hpp"
#include "delpezzo/plane_geometry.hpp"
#include "delpezzo/parallel.hpp"
#include "delpezzo/cox.hpp"
