#pragma once

#include "zslen/aamp.hpp"
#include "zslen/aamp_survey.hpp"
#include "zslen/atoms.hpp"
#include "zslen/automorphism.hpp"
#include "zslen/closure.hpp"
#include "zslen/distances.hpp"
#include "zslen/factorization.hpp"
#include "zslen/group.hpp"
#include "zslen/length_set.hpp"
#include "zslen/options.hpp"
#include "zslen/oracle.hpp"
#include "zslen/sequence.hpp"
#include "zslen/sumset.hpp"
#include "zslen/system.hpp"
#include "zslen/verify/catalogue.hpp"
