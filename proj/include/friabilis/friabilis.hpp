#pragma once

#include "common.hpp"
#include "dickman.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "prime_table.hpp"
#include "psi_exact.hpp"
#include "saddle.hpp"
#include "theorem.hpp"
