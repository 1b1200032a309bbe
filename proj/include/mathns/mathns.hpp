#pragma once

#include "mathns/assignment.hpp"
#include "mathns/cluster.hpp"
#include "mathns/corpus.hpp"
#include "mathns/defaults.hpp"
#include "mathns/error.hpp"
#include "mathns/evalns.hpp"
#include "mathns/extraction.hpp"
#include "mathns/fuzzy.hpp"
#include "mathns/idspace.hpp"
#include "mathns/nsbuild.hpp"
#include "mathns/pipeline.hpp"
#include "mathns/reduce.hpp"
#include "mathns/rng.hpp"
#include "mathns/simindex.hpp"
#include "mathns/stemmer.hpp"
#include "mathns/strings.hpp"
#include "mathns/textproc.hpp"
#include "mathns/unicode.hpp"
