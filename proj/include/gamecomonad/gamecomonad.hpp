#pragma once

#include <gamecomonad/error.hpp>
#include <gamecomonad/structure.hpp>
#include <gamecomonad/structure_io.hpp>
#include <gamecomonad/hom.hpp>
#include <gamecomonad/play_tree.hpp>
#include <gamecomonad/game.hpp>
#include <gamecomonad/ef.hpp>
#include <gamecomonad/pebble.hpp>
#include <gamecomonad/modal.hpp>
#include <gamecomonad/theta.hpp>
#include <gamecomonad/iso.hpp>
#include <gamecomonad/equivalence.hpp>
#include <gamecomonad/formula.hpp>
#include <gamecomonad/sampler.hpp>
#include <gamecomonad/forest.hpp>
#include <gamecomonad/coalgebra.hpp>
#include <gamecomonad/parameters.hpp>
#include <gamecomonad/oracles.hpp>
#include <gamecomonad/laws.hpp>
#include <gamecomonad/certificate.hpp>
#include <gamecomonad/verdict.hpp>
