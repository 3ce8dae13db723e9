#pragma once

#include "mbgame/types.hpp"
#include "mbgame/tournament.hpp"
#include "mbgame/engine.hpp"
#include "mbgame/trace.hpp"
#include "mbgame/graphview.hpp"
#include "mbgame/schedule.hpp"
#include "mbgame/breaker.hpp"
#include "mbgame/match.hpp"
#include "mbgame/certificate.hpp"
#include "mbgame/maker.hpp"
#include "mbgame/oracle.hpp"
#include "mbgame/harness.hpp"
