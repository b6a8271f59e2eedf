#pragma once

#include <iosfwd>
#include <string>

#include "daride/instance.hpp"
#include "daride/schedule.hpp"

namespace daride {

// Line-oriented instance format, UTF-8, "\n" terminators, 0-based vertex ids:
//   DARIDE 1
//   n <int>
//   mode metric|graph
//   metric mode: n lines of n space-separated nonnegative integers
//   graph  mode: "edges <E>" then E lines "u v w"
//   capacity <k>
//   depots <q>  followed by one line of q vertex ids
//   demands <m> followed by m lines "s t w"
void write_instance(std::ostream& os, const Instance& inst);
Instance read_instance(std::istream& is);
void write_instance_file(const std::string& path, const Instance& inst);
Instance read_instance_file(const std::string& path);

// Schedule format:
//   SCHED 1
//   rounds <R>
//   then per round, per vehicle (v0..v{q-1}) one line:
//     v<id>: move 3 ; pick 0 ; move 5 ; drop 0
//   mid-edge targets are written "movemid u v off" with off an exact rational
//   ("p" or "p/q").
void write_schedule(std::ostream& os, const Schedule& sched);
Schedule read_schedule(std::istream& is);
void write_schedule_file(const std::string& path, const Schedule& sched);
Schedule read_schedule_file(const std::string& path);

}  // namespace daride
