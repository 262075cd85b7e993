#pragma once

#include "schreier/canonical.hpp"
#include "schreier/cb_index.hpp"
#include "schreier/certificate.hpp"
#include "schreier/coloring.hpp"
#include "schreier/family.hpp"
#include "schreier/finite_set.hpp"
#include "schreier/ordinal.hpp"
#include "schreier/ramsey.hpp"
#include "schreier/uniform_system.hpp"
