#pragma once

#include "qzeno/basis.hpp"
#include "qzeno/eig.hpp"
#include "qzeno/errors.hpp"
#include "qzeno/experiment.hpp"
#include "qzeno/expm.hpp"
#include "qzeno/matrix.hpp"
#include "qzeno/models.hpp"
#include "qzeno/presets.hpp"
#include "qzeno/projectors.hpp"
#include "qzeno/quasi_zeno.hpp"
#include "qzeno/report.hpp"
#include "qzeno/site_ops.hpp"
#include "qzeno/trajectory.hpp"
