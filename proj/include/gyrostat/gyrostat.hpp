#pragma once
// Free rigid body with three rotors in four equivalent reduced formulations,
// with a harness that verifies equivalence, conservation laws, and
// Noether-current drift identities numerically.
#include "gyrostat/algebra.hpp"
#include "gyrostat/config.hpp"
#include "gyrostat/conserved.hpp"
#include "gyrostat/dynamics.hpp"
#include "gyrostat/formulations.hpp"
#include "gyrostat/harness.hpp"
#include "gyrostat/integrators.hpp"
#include "gyrostat/io.hpp"
