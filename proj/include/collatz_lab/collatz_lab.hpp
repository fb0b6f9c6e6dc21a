#ifndef COLLATZ_LAB_COLLATZ_LAB_HPP
#define COLLATZ_LAB_COLLATZ_LAB_HPP

#include "collatz_lab/numdomain.hpp"
#include "collatz_lab/trajectories.hpp"
#include "collatz_lab/certificates.hpp"
#include "collatz_lab/reverse.hpp"
#include "collatz_lab/collatz_tree.hpp"
#include "collatz_lab/sweep.hpp"

#endif  // COLLATZ_LAB_COLLATZ_LAB_HPP
