#pragma once

// Umbrella header.

#include "sl2var/abelian.hpp"
#include "sl2var/actions.hpp"
#include "sl2var/config.hpp"
#include "sl2var/fields.hpp"
#include "sl2var/int_matrix.hpp"
#include "sl2var/json_io.hpp"
#include "sl2var/kmatrix.hpp"
#include "sl2var/linearize.hpp"
#include "sl2var/module_ops.hpp"
#include "sl2var/pbw.hpp"
#include "sl2var/report.hpp"
#include "sl2var/suite.hpp"
#include "sl2var/zoo.hpp"
