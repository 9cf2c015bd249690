"""Dev-time helper: write a GAP script that prints the character table of a
fixture group with columns in this package's class order.

    python tools/export_chartable.py tests/fixtures/groups/g5760.pg > /tmp/ct.g
    gap -q /tmp/ct.g > tests/fixtures/tables/g5760.chartable
"""
import sys

from cdj.io import read_group

GAP_BODY = r"""
SetPrintFormattingStatus("*stdout*", false);
G := Group(gens, ());;
tbl := CharacterTable(G);;
cc := ConjugacyClasses(tbl);;
pos := List(reps, r -> PositionProperty(cc, c -> r in c));;
e := Exponent(G);;
Term := function(c, k)
    local s;
    if k = 0 then return String(c); fi;
    if c = 1 then s := ""; elif c = -1 then s := "-"; else s := Concatenation(String(c), "*"); fi;
    if k = 1 then return Concatenation(s, "z"); fi;
    return Concatenation(s, "z^", String(k));
end;;
Fmt := function(x)
    local cf, out, k, t;
    if IsRat(x) then return String(x); fi;
    cf := CoeffsCyc(x, e);
    out := "";
    for k in [0 .. e - 1] do
        if cf[k + 1] <> 0 then
            t := Term(cf[k + 1], k);
            if out <> "" and t[1] <> '-' then Append(out, "+"); fi;
            Append(out, t);
        fi;
    od;
    if out = "" then return "0"; fi;
    return out;
end;;
Print("# chartable\n");
Print("group ", label, "\n");
Print("exponent ", e, "\n");
Print("classes ", Length(reps), "\n");
Print(JoinStringsWithSeparator(List(reps, r -> String(Size(ConjugacyClass(G, r)))), " "), "\n");
Print(JoinStringsWithSeparator(List(reps, r -> String(Order(r))), " "), "\n");
for chi in Irr(tbl) do
    Print(chi[1], " ", JoinStringsWithSeparator(List(pos, p -> Fmt(chi[p])), " "), "\n");
od;
QUIT;
"""


def main(path: str) -> None:
    group = read_group(path)
    cls = group.classes
    print("gens := [" + ", ".join(g.to_cycle_string() for g in group.generators) + "];;")
    print("reps := [" + ", ".join(r.to_cycle_string() for r in cls.reps) + "];;")
    print(f'label := "{group.label}";;')
    print(GAP_BODY)


if __name__ == "__main__":
    main(sys.argv[1])
