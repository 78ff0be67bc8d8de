#pragma once

// Everything except the command layer, which pulls in YAML and JSON.
#include "reslim/error.hpp"
#include "reslim/rational.hpp"
#include "reslim/resource_vector.hpp"
#include "reslim/expression.hpp"
#include "reslim/statement.hpp"
#include "reslim/strings.hpp"
#include "reslim/world.hpp"
#include "reslim/verification.hpp"
#include "reslim/godel.hpp"
#include "reslim/proof.hpp"
#include "reslim/theory.hpp"
#include "reslim/lattice.hpp"
#include "reslim/reflection.hpp"
#include "reslim/observer.hpp"
