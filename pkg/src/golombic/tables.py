"""Published terms of four golombic and Levine sequences, used as expected values.

Long terms are stored as concatenated string literals; see :data:`TABLES`.
"""
from __future__ import annotations
from dataclasses import dataclass

@dataclass(frozen=True)
class Table:
    id: int
    kind: str
    seed: str
    title: str
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

_T1 = (
    "1",
    "2",
    "2",
    "3",
    "5",
    "11",
    "38",
    "272",
    "6474",
    "1090483",
    "4363282578",
    "2940715000315189",
    "7930047000157075949085439",
    "14412592242471457956514645440241289655074",
    (
        "706366080267540778883308191164330405625826347053804323620088"
        "48092"
    ),
    (
        "629193807478476749232684445388830812901556086374831874635964"
        "109266872087765223798623957170361696051714808"
    ),
    (
        "274679710774467801558637071964120644623371548235513562173560"
        "586253899638892063967223817009010426152743428280950152288056"
        "12576584237742560138241905230925658418113598362450"
    ),
    (
        "106812824965467605954585977251109283028627822389911527791595"
        "135865211190026888086973173355550098402002269620478911865791"
        "081312574481079476576881211368559418780348172373230890258029"
        "528689264337149196604264834413862430830118920491291753814840"
        "51105807121010552592345789589177244"
    ),
    (
        "181326940877362527538257467623537973461927569119311057250444"
        "144875734659143278273051378468643572659960483509344293926503"
        "055046354115226474721469290439663843407699283063242454640563"
        "973779162119665115691428170790457955121041161219237925549658"
        "302338324679020128607082337488971621360213507135920903652479"
        "803760317412179872022642510942471562312220922306454748660853"
        "586426265792624429317978527133859433382891392190552480111672"
        "830592742834237563852836"
    ),
)

_T2 = (
    "1",
    "2",
    "2",
    "3",
    "4",
    "7",
    "14",
    "42",
    "213",
    "2837",
    "175450",
    "139759600",
    "6837625106787",
    "266437144916648607844",
    "508009471379488821444261986503540",
    "37745517525533091954736701257541238885239740313139682",
    (
        "534742638381269723378613957622045014225037327749913025255408"
        "0838158299886992660750432"
    ),
    (
        "562886959965089436255276483697229698570162841824809622582532"
        "605381139233592661173923167148109300449802836225308993458839"
        "03443973143886461"
    ),
    (
        "839417726637351731605605436725347266838734537474625936912785"
        "445257232852900236738725857158304320713848274725656524266952"
        "697247104588082417791326567485011836725440062543774312172177"
        "62964060736471826937656819379445242826439"
    ),
    (
        "131768585470726533947983574523047738631373532034665627957096"
        "263662173005468116134191264757919021449311425260422572172618"
        "746527090032696189477749573760519660979835010392974960148241"
        "997061140814185154991548537684267030095318452403244566267056"
        "438140144926785816563158987858604017295162644121699674679377"
        "4353710261882069842922084089160802454747060478632732814946"
    ),
)

_T3 = (
    "3",
    "1",
    "3",
    "3",
    "6",
    "10",
    "28",
    "108",
    "1011",
    "32511",
    "9314238",
    "84560776390",
    "219625370880235960",
    "5178941522681382123892005221",
    "317195599240175645015464306479382985752031865",
    (
        "458118706320594776183599743881383842326646671002717727944161"
        "269026105841"
    ),
    (
        "405244231064753621312126715777104387819836725275946895401864"
        "81007941224989794967558352011528561939344387386361918024"
    ),
    (
        "517734706951251237535645078871725288172010082560578109830724"
        "732757803546151844793635698385556746175450470169068259400348"
        "809846908421331320764244898886841226930736565024659040954172"
        "9350948"
    ),
    (
        "585108990785443791371119739821604842398186308190779114659442"
        "809026745530854879901826244919477082266936863042480072696563"
        "844454389594821366538242678424804173898851358613606640376458"
        "206162955302544691640788300778360488042264405199709047487450"
        "722041224259382928291902346483920161157435863416964666380998"
        "54"
    ),
)

_T4 = (
    "2",
    "2",
    "4",
    "6",
    "13",
    "35",
    "171",
    "1934",
    "97151",
    "52942129",
    "1435382350480",
    "21191828466255176653",
    "8482726531439110654657256441218",
    "50131800300416773319763186119561362369281827059942",
    (
        "118593237444245044162979641011632199299775500898191134931490"
        "487767364941673215121"
    ),
    (
        "165800382137659461589704907357168540981516793185632009239473"
        "510525309096371016162428856283927493801643328487540483115249"
        "7013018105"
    ),
    (
        "548350247347858284424735841286598432135554883736080031677080"
        "628586300038196498320973659796091956479764217227046839806477"
        "827739983749817030539482371451432934487316574132306048207393"
        "59759059631007625156541555199"
    ),
    (
        "253545728072869192764207998840425143579813484389632019309647"
        "546884529745976550288515064171168832447130345246314626120338"
        "066989405655081689947162822110618637554083688246295576367009"
        "862251826878859852377152776324173340635776075576170143683332"
        "902160065968222901938021433011670395277829990781635177077683"
        "66511964728681044585582158791222111730"
    ),
)


TABLES = {
    1: Table(1, "golombic", "2", "gol(2), OEIS A014644", tuple(int(v) for v in _T1)),
    2: Table(2, "levine", "2", "lev(2), OEIS A011784", tuple(int(v) for v in _T2)),
    3: Table(3, "levine", "0 0 1", "lev(0,0,1), cf. OEIS A061892", tuple(int(v) for v in _T3)),
    4: Table(4, "levine", "0 2", "lev(0,2), cf. OEIS A061894", tuple(int(v) for v in _T4)),
}


def row_size_estimate(table: Table, depth: int) -> int:
    """Bound on the reduced powers in row ``depth`` of the table's triangle.

    Row d is the image of row d-1, whose exponents sum (in absolute value) to
    at most |a(d)| for the all-positive seeds used here.
    """
    if depth <= 0:
        return len(table.seed.split())
    return abs(table.values[depth - 1])


def required_window(table: Table, N: int, budget: int, plan, max_window: int = 12) -> int | None:
    """Smallest window whose deepest row for terms 1..N fits in ``budget``."""
    for W in range(1, max_window + 1):
        _, depth = plan(table.kind, N, W)
        if row_size_estimate(table, depth) <= budget:
            return W
    return None
