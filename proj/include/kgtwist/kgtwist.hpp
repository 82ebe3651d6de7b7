#pragma once

#include "numeric.hpp"
#include "phase.hpp"
#include "lattice.hpp"
#include "degree.hpp"
#include "kgraph.hpp"
#include "infinite_path.hpp"
#include "structure.hpp"
#include "cocycle.hpp"
#include "groupoid.hpp"
#include "simplicity.hpp"
#include "io.hpp"
#include "properties.hpp"
