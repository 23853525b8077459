#pragma once

#include <string>
#include <vector>

#include "torfan/fan.hpp"

// Named fixture fans shared by the unit and acceptance suites.
namespace corpus {

using torfan::fan::Fan;

Fan rp2();                  // rays e1, e2, -e1-e2; three 2-cones
Fan s1();                   // complete fan of the projective line in Z^1
Fan s1_cross_rstar();       // {<e1>, <-e1>, {0}} in Z^2, disconnected
Fan skew();                 // {<2e1+3e2>, <e1>, {0}} in Z^2, connected, no 2-cones
Fan p1xp1();                // rays e1, e2, -e1, -e2; quadrant cones
Fan hirzebruch1();          // rays e1, e2, -e1+e2, -e2
Fan rp_n(int n);            // projective n-space fan
Fan orthant3();             // faces of <e1, e2, e3>
Fan orthant3_skeleton2();   // same rays, only the two-dimensional faces
Fan rem77();                // orthant star-subdivided at e1+e2+e3; not flag-like

Fan product(const Fan& a, const Fan& b);

// Star subdivision of the given maximal 2-cone; smooth blow-up for 2-fans.
Fan blow_up(const Fan& f, std::size_t max_cone_index);

struct Named {
  std::string name;
  Fan fan;
};

// Smooth complete 2-fans with 3..8 rays: iterated blow-ups of rp2 and p1xp1.
std::vector<Named> surface_corpus();

std::vector<Named> all_corpus();
std::vector<Named> connected_corpus();
std::vector<Named> smooth_complete_corpus();

}  // namespace corpus
