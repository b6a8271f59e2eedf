#include "daride/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace daride {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("io: " + what);
}

std::string next_line(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) bad("unexpected end of input");
    return line;
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream iss(s);
    std::vector<std::string> out;
    std::string t;
    while (iss >> t) out.push_back(t);
    return out;
}

}  // namespace

void write_instance(std::ostream& os, const Instance& inst) {
    os << "DARIDE 1\n";
    os << "n " << inst.n() << "\n";
    if (inst.graph) {
        os << "mode graph\n";
        os << "edges " << inst.graph->edges.size() << "\n";
        for (const auto& e : inst.graph->edges)
            os << e.u << " " << e.v << " " << e.len << "\n";
    } else {
        os << "mode metric\n";
        for (int u = 0; u < inst.n(); ++u) {
            for (int v = 0; v < inst.n(); ++v) {
                if (!rat_is_int(inst.metric.at(u, v)))
                    bad("metric mode requires integer distances");
                os << (v ? " " : "") << inst.metric.at(u, v).numerator();
            }
            os << "\n";
        }
    }
    os << "capacity " << inst.capacity << "\n";
    os << "depots " << inst.q() << "\n";
    for (int j = 0; j < inst.q(); ++j) os << (j ? " " : "") << inst.depots[j];
    os << "\n";
    os << "demands " << inst.m() << "\n";
    for (const auto& dm : inst.demands) os << dm.s << " " << dm.t << " " << dm.w << "\n";
}

Instance read_instance(std::istream& is) {
    Instance inst;
    if (next_line(is) != "DARIDE 1") bad("missing DARIDE 1 header");
    auto nline = tokens(next_line(is));
    if (nline.size() != 2 || nline[0] != "n") bad("expected n <int>");
    int n = std::stoi(nline[1]);
    auto mline = tokens(next_line(is));
    if (mline.size() != 2 || mline[0] != "mode") bad("expected mode line");
    if (mline[1] == "metric") {
        Metric m(n);
        for (int u = 0; u < n; ++u) {
            auto row = tokens(next_line(is));
            if (static_cast<int>(row.size()) != n) bad("bad metric row");
            for (int v = 0; v < n; ++v) m.at(u, v) = Rat(std::stoll(row[v]));
        }
        m.check();
        inst.metric = std::move(m);
    } else if (mline[1] == "graph") {
        auto eline = tokens(next_line(is));
        if (eline.size() != 2 || eline[0] != "edges") bad("expected edges <E>");
        WeightedGraph g;
        g.n = n;
        int ecount = std::stoi(eline[1]);
        for (int e = 0; e < ecount; ++e) {
            auto row = tokens(next_line(is));
            if (row.size() != 3) bad("bad edge line");
            g.edges.push_back({std::stoi(row[0]), std::stoi(row[1]), std::stoll(row[2])});
        }
        inst.metric = metric_from_graph(g);
        inst.graph = std::move(g);
    } else {
        bad("unknown mode " + mline[1]);
    }
    auto cline = tokens(next_line(is));
    if (cline.size() != 2 || cline[0] != "capacity") bad("expected capacity");
    inst.capacity = std::stoll(cline[1]);
    auto dline = tokens(next_line(is));
    if (dline.size() != 2 || dline[0] != "depots") bad("expected depots");
    int q = std::stoi(dline[1]);
    auto drow = tokens(next_line(is));
    if (static_cast<int>(drow.size()) != q) bad("bad depot list");
    for (const auto& t : drow) inst.depots.push_back(std::stoi(t));
    auto mmline = tokens(next_line(is));
    if (mmline.size() != 2 || mmline[0] != "demands") bad("expected demands");
    int m = std::stoi(mmline[1]);
    for (int i = 0; i < m; ++i) {
        auto row = tokens(next_line(is));
        if (row.size() != 3) bad("bad demand line");
        inst.demands.push_back({std::stoi(row[0]), std::stoi(row[1]), std::stoll(row[2])});
    }
    inst.check();
    return inst;
}

void write_schedule(std::ostream& os, const Schedule& sched) {
    os << "SCHED 1\n";
    os << "rounds " << sched.num_rounds() << "\n";
    for (const auto& round : sched.rounds) {
        for (int j = 0; j < sched.q; ++j) {
            os << "v" << j << ":";
            bool first = true;
            for (const auto& act : round[j]) {
                os << (first ? " " : " ; ");
                first = false;
                switch (act.kind) {
                    case Action::Kind::Move:
                        os << "move " << act.a;
                        break;
                    case Action::Kind::MoveMid:
                        os << "movemid " << act.a << " " << act.b << " " << rat_str(act.off);
                        break;
                    case Action::Kind::Pick:
                        os << "pick " << act.obj;
                        break;
                    case Action::Kind::Drop:
                        os << "drop " << act.obj;
                        break;
                    case Action::Kind::Wait:
                        os << "wait";
                        break;
                }
            }
            os << "\n";
        }
    }
}

Schedule read_schedule(std::istream& is) {
    if (next_line(is) != "SCHED 1") bad("missing SCHED 1 header");
    auto rline = tokens(next_line(is));
    if (rline.size() != 2 || rline[0] != "rounds") bad("expected rounds <R>");
    int rounds = std::stoi(rline[1]);

    std::vector<std::vector<Action>> lines;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos || line[0] != 'v') bad("bad schedule line: " + line);
        std::vector<Action> acts;
        std::string rest = line.substr(colon + 1);
        std::vector<std::string> parts;
        {
            std::string cur;
            for (char c : rest) {
                if (c == ';') {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            parts.push_back(cur);
        }
        for (const auto& p : parts) {
            auto tk = tokens(p);
            if (tk.empty()) continue;
            if (tk[0] == "move" && tk.size() == 2)
                acts.push_back(Action::move(std::stoi(tk[1])));
            else if (tk[0] == "movemid" && tk.size() == 4)
                acts.push_back(Action::move_mid(std::stoi(tk[1]), std::stoi(tk[2]),
                                                rat_parse(tk[3])));
            else if (tk[0] == "pick" && tk.size() == 2)
                acts.push_back(Action::pick(std::stoi(tk[1])));
            else if (tk[0] == "drop" && tk.size() == 2)
                acts.push_back(Action::drop(std::stoi(tk[1])));
            else if (tk[0] == "wait" && tk.size() == 1)
                acts.push_back(Action::wait());
            else
                bad("bad action: " + p);
        }
        lines.push_back(std::move(acts));
    }
    if (rounds == 0) {
        if (!lines.empty()) bad("schedule lines after rounds 0");
        return Schedule::empty(0);
    }
    if (lines.size() % rounds != 0) bad("line count not divisible by rounds");
    int q = static_cast<int>(lines.size()) / rounds;
    Schedule sched = Schedule::empty(q);
    for (int r = 0; r < rounds; ++r) {
        auto& round = sched.add_round();
        for (int j = 0; j < q; ++j) round[j] = std::move(lines[r * q + j]);
    }
    return sched;
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream os(path, std::ios::binary);
    if (!os) bad("cannot open " + path);
    write_instance(os, inst);
}

Instance read_instance_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) bad("cannot open " + path);
    return read_instance(is);
}

void write_schedule_file(const std::string& path, const Schedule& sched) {
    std::ofstream os(path, std::ios::binary);
    if (!os) bad("cannot open " + path);
    write_schedule(os, sched);
}

Schedule read_schedule_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) bad("cannot open " + path);
    return read_schedule(is);
}

}  // namespace daride
